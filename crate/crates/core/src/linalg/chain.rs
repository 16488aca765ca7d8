//! Chain complexes of free modules over `Z[S^-1]` and their homology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::abelian::AbelianGroup;
use super::matrix::{IntMatrix, RatMatrix};
use super::snf::{diagonalize, rank, Track};
use crate::arith::{strip, PrimeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("composite of consecutive differentials is nonzero at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("matrix shape mismatch at degree {degree}")]
    Shape { degree: usize },
    #[error("differential at degree {degree} has denominator {denominator} outside Z[{primes}^-1]")]
    Denominator { degree: usize, denominator: BigInt, primes: PrimeSet },
    #[error("map is not a chain map at degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("homology generators are only computed over the integers")]
    Localized,
}

/// Which way the differentials point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `d_n : C_n -> C_{n-1}`.
    Homological,
    /// `d^n : C^n -> C^{n+1}`.
    Cohomological,
}

/// A bounded complex in degrees `0..dims.len()` over `Z[S^-1]`.
///
/// `maps[n]` leaves degree `n`: it has `dims[n]` columns and `dims[n-1]`
/// (resp. `dims[n+1]`) rows. Differentials leaving the range are zero.
/// Entries are stored integral after scaling by units of `Z[S^-1]`,
/// which alters neither kernels nor images.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub direction: Direction,
    pub dims: Vec<usize>,
    pub maps: Vec<IntMatrix>,
    pub primes: PrimeSet,
}

impl ChainComplex {
    pub fn new(direction: Direction, dims: Vec<usize>, maps: Vec<IntMatrix>) -> Result<Self, ChainError> {
        Self::localized(direction, dims, maps, PrimeSet::empty())
    }

    pub fn localized(
        direction: Direction,
        dims: Vec<usize>,
        maps: Vec<IntMatrix>,
        primes: PrimeSet,
    ) -> Result<Self, ChainError> {
        let c = Self { direction, dims, maps, primes };
        c.validate()?;
        Ok(c)
    }

    /// Builds from rational differentials, scaling each by its denominator.
    pub fn from_rational(
        direction: Direction,
        dims: Vec<usize>,
        maps: Vec<RatMatrix>,
        primes: PrimeSet,
    ) -> Result<Self, ChainError> {
        let mut ints = Vec::with_capacity(maps.len());
        for (degree, m) in maps.iter().enumerate() {
            let (den, int) = m.clear_denominators();
            if !primes.is_unit(&den) {
                return Err(ChainError::Denominator { degree, denominator: den, primes });
            }
            ints.push(int);
        }
        Self::localized(direction, dims, ints, primes)
    }

    pub fn top(&self) -> usize {
        self.dims.len()
    }

    fn target_degree(&self, n: usize) -> Option<usize> {
        match self.direction {
            Direction::Homological => n.checked_sub(1),
            Direction::Cohomological => (n + 1 < self.dims.len()).then_some(n + 1),
        }
    }

    /// The differential leaving degree `n`; it has no rows when it leaves the range.
    pub fn outgoing(&self, n: usize) -> IntMatrix {
        self.maps[n].clone()
    }

    /// The differential arriving at degree `n`.
    pub fn incoming(&self, n: usize) -> IntMatrix {
        let source = match self.direction {
            Direction::Homological => (n + 1 < self.dims.len()).then_some(n + 1),
            Direction::Cohomological => n.checked_sub(1),
        };
        match source {
            Some(s) => self.maps[s].clone(),
            None => IntMatrix::zeros(self.dims[n], 0),
        }
    }

    fn validate(&self) -> Result<(), ChainError> {
        if self.maps.len() != self.dims.len() {
            return Err(ChainError::Shape { degree: self.maps.len() });
        }
        for n in 0..self.dims.len() {
            let m = &self.maps[n];
            let rows = self.target_degree(n).map_or(0, |t| self.dims[t]);
            if m.cols() != self.dims[n] || m.rows() != rows {
                return Err(ChainError::Shape { degree: n });
            }
        }
        for n in 0..self.dims.len() {
            if let Some(t) = self.target_degree(n) {
                if self.target_degree(t).is_some() && !self.maps[t].mul(&self.maps[n]).is_zero() {
                    return Err(ChainError::NotAComplex { degree: n });
                }
            }
        }
        Ok(())
    }

    /// (Co)homology at degree `n`.
    pub fn homology(&self, n: usize) -> AbelianGroup {
        if n >= self.dims.len() {
            return AbelianGroup::zero();
        }
        let out_rank = rank(&self.outgoing(n));
        let incoming = diagonalize(&self.incoming(n), Track::NONE);
        let free = self.dims[n] - out_rank - incoming.rank();
        let orders = incoming.diagonal.iter().map(|d| strip(d, &self.primes)).collect();
        AbelianGroup::from_orders(free, orders)
    }

    pub fn all_homology(&self) -> Vec<AbelianGroup> {
        (0..self.dims.len()).map(|n| self.homology(n)).collect()
    }

    /// Homology at degree `n` together with explicit cycle representatives.
    pub fn homology_basis(&self, n: usize) -> Result<HomologyBasis, ChainError> {
        if !self.primes.is_empty() {
            return Err(ChainError::Localized);
        }
        if n >= self.dims.len() {
            return Ok(HomologyBasis::trivial(0));
        }
        Ok(HomologyBasis::compute(&self.incoming(n), &self.outgoing(n), self.dims[n]))
    }
}

/// A presentation of `H = ker(out) / im(in)` with chosen generators.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    /// Dimension of the chain group.
    pub dim: usize,
    /// Cycle representatives, one per nontrivial cyclic summand.
    pub generators: Vec<Vec<BigInt>>,
    /// Order of each generator, `0` meaning infinite order.
    pub orders: Vec<BigInt>,
    /// Rows `r..` of `Q^-1` for the outgoing map: chain coordinates to kernel coordinates.
    to_kernel: IntMatrix,
    /// `P'` for the image in kernel coordinates, restricted to kept rows.
    to_summands: IntMatrix,
}

impl HomologyBasis {
    fn trivial(dim: usize) -> Self {
        Self {
            dim,
            generators: vec![],
            orders: vec![],
            to_kernel: IntMatrix::zeros(0, dim),
            to_summands: IntMatrix::zeros(0, 0),
        }
    }

    fn compute(incoming: &IntMatrix, outgoing: &IntMatrix, dim: usize) -> Self {
        let out = diagonalize(outgoing, Track::ALL);
        let r = out.rank();
        let q = out.q.expect("tracked");
        let q_inv = out.q_inv.expect("tracked");
        let to_kernel = q_inv.select_rows(r..dim);
        let kernel = q.select_cols(r..dim);
        let image = to_kernel.mul(incoming);
        let img = diagonalize(&image, Track { rows: true, cols: false });
        let img_rank = img.rank();
        let p = img.p.expect("tracked");
        let p_inv = img.p_inv.expect("tracked");
        let k = dim - r;
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        let mut kept = Vec::new();
        for i in 0..k {
            let order = if i < img_rank { img.diagonal[i].clone() } else { BigInt::zero() };
            if order.is_one() {
                continue;
            }
            let coords = p_inv.column(i);
            generators.push(kernel.mul_vec(&coords));
            orders.push(order);
            kept.push(i);
        }
        let to_summands = IntMatrix::from_fn(kept.len(), k, |a, b| p.get(kept[a], b).clone());
        Self { dim, generators, orders, to_kernel, to_summands }
    }

    pub fn group(&self) -> AbelianGroup {
        let free = self.orders.iter().filter(|o| o.is_zero()).count();
        AbelianGroup::from_orders(free, self.orders.iter().filter(|o| !o.is_zero()).cloned().collect())
    }

    /// Coordinates of the class of `cycle`, each reduced modulo its generator's order.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let kernel_coords = self.to_kernel.mul_vec(cycle);
        let raw = self.to_summands.mul_vec(&kernel_coords);
        raw.into_iter()
            .zip(&self.orders)
            .map(|(c, o)| if o.is_zero() { c } else { c.mod_floor(o) })
            .collect()
    }
}

/// A degree-preserving map between complexes of the same direction.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub components: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn check(&self, source: &ChainComplex, target: &ChainComplex) -> Result<(), ChainError> {
        for n in 0..source.dims.len() {
            let f = &self.components[n];
            let target_dim = target.dims.get(n).copied().unwrap_or(0);
            if f.cols() != source.dims[n] || f.rows() != target_dim {
                return Err(ChainError::Shape { degree: n });
            }
            let next = match source.direction {
                Direction::Homological => n.checked_sub(1),
                Direction::Cohomological => (n + 1 < source.dims.len()).then_some(n + 1),
            };
            if let Some(m) = next {
                if m < target.dims.len() {
                    let lhs = target.outgoing(n).mul(f);
                    let rhs = self.components[m].mul(&source.outgoing(n));
                    if lhs != rhs {
                        return Err(ChainError::NotAChainMap { degree: n });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Matrix of the induced map on homology in the chosen generators.
///
/// Column `j` is the image of source generator `j` in target coordinates.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub source: HomologyBasis,
    pub target: HomologyBasis,
    pub matrix: IntMatrix,
}

impl InducedMap {
    pub fn compute(
        source: &ChainComplex,
        target: &ChainComplex,
        map: &ChainMap,
        n: usize,
    ) -> Result<InducedMap, ChainError> {
        map.check(source, target)?;
        let src = source.homology_basis(n)?;
        let tgt = target.homology_basis(n)?;
        let f = &map.components[n];
        let columns: Vec<Vec<BigInt>> =
            src.generators.iter().map(|z| tgt.coordinates(&f.mul_vec(z))).collect();
        let matrix = IntMatrix::from_fn(tgt.orders.len(), columns.len(), |i, j| columns[j][i].clone());
        Ok(InducedMap { source: src, target: tgt, matrix })
    }

    /// Cokernel of the induced map.
    pub fn cokernel(&self) -> AbelianGroup {
        let k = self.target.orders.len();
        let mut relations: Vec<Vec<BigInt>> = Vec::new();
        for (i, o) in self.target.orders.iter().enumerate() {
            if !o.is_zero() {
                let mut col = vec![BigInt::zero(); k];
                col[i] = o.clone();
                relations.push(col);
            }
        }
        for j in 0..self.matrix.cols() {
            relations.push(self.matrix.column(j));
        }
        let pres = IntMatrix::from_fn(k, relations.len(), |i, j| relations[j][i].clone());
        let d = diagonalize(&pres, Track::NONE);
        AbelianGroup::from_orders(k - d.rank(), d.diagonal)
    }

    /// The scalar by which the map acts when source and target are the same cyclic group.
    pub fn scalar(&self) -> Option<BigInt> {
        if self.matrix.rows() != 1 || self.matrix.cols() != 1 {
            return None;
        }
        let v = self.matrix.get(0, 0).clone();
        let o = &self.target.orders[0];
        Some(if o.is_zero() {
            v
        } else {
            // symmetric residue so that -1 reads as -1
            let r = v.mod_floor(o);
            if &r * 2 > *o {
                r - o
            } else {
                r
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_complex() -> ChainComplex {
        // two vertices, two edges: a circle
        let d1 = IntMatrix::from_i64(vec![vec![-1, -1], vec![1, 1]], 2);
        ChainComplex::new(Direction::Homological, vec![2, 2], vec![IntMatrix::zeros(0, 2), d1]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = circle_complex();
        assert_eq!(c.homology(0), AbelianGroup::free(1));
        assert_eq!(c.homology(1), AbelianGroup::free(1));
    }

    #[test]
    fn rp2_and_localization() {
        // one cell per degree, boundaries 0 and 2
        let d1 = IntMatrix::from_i64(vec![vec![0]], 1);
        let d2 = IntMatrix::from_i64(vec![vec![2]], 1);
        let dims = vec![1, 1, 1];
        let maps = vec![IntMatrix::zeros(0, 1), d1.clone(), d2.clone()];
        let c = ChainComplex::new(Direction::Homological, dims.clone(), maps.clone()).unwrap();
        assert_eq!(c.homology(1), AbelianGroup::cyclic(2));
        assert_eq!(c.homology(2), AbelianGroup::zero());
        let l = ChainComplex::localized(Direction::Homological, dims, maps, PrimeSet::from_primes([2])).unwrap();
        assert!(l.homology(1).is_zero());
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_i64(vec![vec![1]], 1);
        let d2 = IntMatrix::from_i64(vec![vec![1]], 1);
        let r = ChainComplex::new(
            Direction::Homological,
            vec![1, 1, 1],
            vec![IntMatrix::zeros(0, 1), d1, d2],
        );
        assert!(matches!(r, Err(ChainError::NotAComplex { .. })));
    }

    #[test]
    fn induced_swap_on_circle() {
        let c = circle_complex();
        // swap the vertices and the edges: rotation by pi, degree +1
        let swap = IntMatrix::from_i64(vec![vec![0, 1], vec![1, 0]], 2);
        let reversed = IntMatrix::from_i64(vec![vec![0, -1], vec![-1, 0]], 2);
        let map = ChainMap { components: vec![swap, reversed] };
        let h1 = InducedMap::compute(&c, &c, &map, 1).unwrap();
        assert_eq!(h1.scalar(), Some(BigInt::from(1)));
        assert!(h1.cokernel().is_zero());
        // reflection fixing the vertices and swapping edges: degree -1
        let id = IntMatrix::identity(2);
        let map = ChainMap { components: vec![id, IntMatrix::from_i64(vec![vec![0, 1], vec![1, 0]], 2)] };
        let h1 = InducedMap::compute(&c, &c, &map, 1).unwrap();
        assert_eq!(h1.scalar(), Some(BigInt::from(-1)));
    }

    #[test]
    fn cokernel_of_multiplication() {
        let c = ChainComplex::new(Direction::Homological, vec![1], vec![IntMatrix::zeros(0, 1)]).unwrap();
        let map = ChainMap { components: vec![IntMatrix::from_i64(vec![vec![3]], 1)] };
        let f = InducedMap::compute(&c, &c, &map, 0).unwrap();
        assert_eq!(f.cokernel(), AbelianGroup::cyclic(3));
    }
}
