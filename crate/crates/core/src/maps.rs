//! Maps between finite spaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::space::FinSpace;

/// A map defined on every point of its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalMap {
    source: Arc<FinSpace>,
    target: Arc<FinSpace>,
    assignment: Vec<usize>,
}

impl TotalMap {
    pub fn new(source: Arc<FinSpace>, target: Arc<FinSpace>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.n() {
            return Err(Error::MapArity {
                expected: source.n(),
                found: assignment.len(),
            });
        }
        for &y in &assignment {
            target.point(y)?;
        }
        Ok(TotalMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(space: Arc<FinSpace>) -> Self {
        let assignment = (0..space.n()).collect();
        TotalMap {
            source: space.clone(),
            target: space,
            assignment,
        }
    }

    pub fn constant(source: Arc<FinSpace>, target: Arc<FinSpace>, y: usize) -> Result<Self> {
        let n = source.n();
        Self::new(source, target, vec![y; n])
    }

    pub fn source(&self) -> &Arc<FinSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSpace> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `F(A)`.
    pub fn image(&self, a: &PointSet) -> PointSet {
        let mut out = self.target.empty();
        for x in a.iter() {
            out.insert(self.assignment[x]);
        }
        out
    }

    /// `F⁻¹(B)`.
    pub fn preimage(&self, b: &PointSet) -> PointSet {
        let mut out = self.source.empty();
        for (x, &y) in self.assignment.iter().enumerate() {
            if b.contains(y) {
                out.insert(x);
            }
        }
        out
    }

    /// `G ∘ F`; fails when the spaces do not line up.
    pub fn then(&self, g: &TotalMap) -> Result<TotalMap> {
        if *self.target != *g.source {
            return Err(Error::UniverseMismatch {
                expected: g.source.n(),
                found: self.target.n(),
            });
        }
        TotalMap::new(
            self.source.clone(),
            g.target.clone(),
            self.assignment.iter().map(|&y| g.assignment[y]).collect(),
        )
    }

    pub fn restrict(&self, domain: &PointSet) -> Result<PartialMap> {
        domain.check_universe(self.source.n())?;
        let assignment = (0..self.source.n())
            .map(|x| domain.contains(x).then(|| self.assignment[x]))
            .collect();
        Ok(PartialMap {
            source: self.source.clone(),
            target: self.target.clone(),
            domain: *domain,
            assignment,
        })
    }
}

/// A map defined on a subset of its source (`f: S → Y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMap {
    source: Arc<FinSpace>,
    target: Arc<FinSpace>,
    domain: PointSet,
    assignment: Vec<Option<usize>>,
}

impl PartialMap {
    /// `pairs` lists `(source point, target point)`; the domain is the set of
    /// source points mentioned.
    pub fn new(
        source: Arc<FinSpace>,
        target: Arc<FinSpace>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut domain = source.empty();
        let mut assignment = vec![None; source.n()];
        for (x, y) in pairs {
            source.point(x)?;
            target.point(y)?;
            domain.insert(x);
            assignment[x] = Some(y);
        }
        Ok(PartialMap {
            source,
            target,
            domain,
            assignment,
        })
    }

    /// Builds from a domain and the values on it in ascending point order.
    pub fn from_values(
        source: Arc<FinSpace>,
        target: Arc<FinSpace>,
        domain: PointSet,
        values: &[usize],
    ) -> Result<Self> {
        domain.check_universe(source.n())?;
        if values.len() != domain.len() {
            return Err(Error::MapArity {
                expected: domain.len(),
                found: values.len(),
            });
        }
        Self::new(source, target, domain.iter().zip(values.iter().copied()))
    }

    pub fn source(&self) -> &Arc<FinSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSpace> {
        &self.target
    }

    pub fn domain(&self) -> PointSet {
        self.domain
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.assignment.get(x).copied().flatten()
    }

    /// Values on the domain in ascending point order.
    pub fn values(&self) -> Vec<usize> {
        self.domain.iter().map(|x| self.assignment[x].unwrap()).collect()
    }

    /// `(point, value)` pairs in ascending point order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.domain.iter().map(|x| (x, self.assignment[x].unwrap()))
    }

    /// `f(M)` for `M` inside the domain; points outside are ignored.
    pub fn image(&self, m: &PointSet) -> PointSet {
        let mut out = self.target.empty();
        for x in m.intersection(&self.domain).iter() {
            out.insert(self.assignment[x].unwrap());
        }
        out
    }

    pub fn is_total(&self) -> bool {
        self.domain.is_full()
    }

    pub fn to_total(&self) -> Option<TotalMap> {
        self.is_total().then(|| TotalMap {
            source: self.source.clone(),
            target: self.target.clone(),
            assignment: self.values(),
        })
    }

    /// `f` viewed as a total map on the subspace topology of its domain.
    pub fn on_subspace(&self) -> Result<TotalMap> {
        let (sub, relabel) = self.source.subspace(&self.domain)?;
        let assignment = relabel.iter().map(|&x| self.assignment[x].unwrap()).collect();
        TotalMap::new(Arc::new(sub), self.target.clone(), assignment)
    }
}
