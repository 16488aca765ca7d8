//! Homological checks on complexes: induced maps, the join sequence, and
//! the orbit-map lemmas for semidirect decompositions.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{GCWComplex, GcwError, SignedCell};
use crate::arith::prime_factors;
use crate::certificate::Certificate;
use crate::linalg::{AbelianGroup, ChainComplex, ChainError, ChainMap, Direction, IntMatrix, InducedMap};
use crate::semidirect::SemidirectDecomposition;

fn chain_error(e: ChainError) -> GcwError {
    match e {
        ChainError::NotAChainMap { degree } => GcwError::NotChainMap(format!("fails at degree {degree}")),
        ChainError::Shape { degree } => GcwError::NotChainMap(format!("shape mismatch at degree {degree}")),
        other => GcwError::Chain(other),
    }
}

/// Matrices of the map induced on each homology group, in Smith normal form coordinates.
pub fn induced_map_on_homology(
    source: &ChainComplex,
    target: &ChainComplex,
    map: &ChainMap,
) -> Result<Vec<InducedMap>, GcwError> {
    map.check(source, target).map_err(chain_error)?;
    (0..source.top()).map(|n| InducedMap::compute(source, target, map, n).map_err(chain_error)).collect()
}

/// Cokernel of the induced map in every degree of the target.
fn cokernels(source: &ChainComplex, target: &ChainComplex, map: &ChainMap) -> Result<Vec<AbelianGroup>, GcwError> {
    let induced = induced_map_on_homology(source, target, map)?;
    Ok((0..target.top())
        .map(|n| match induced.get(n) {
            Some(f) => f.cokernel(),
            None => target.homology(n),
        })
        .collect())
}

/// Surjective maps between isomorphic finitely generated groups are isomorphisms.
fn is_isomorphism(source: &ChainComplex, target: &ChainComplex, cokernels: &[AbelianGroup]) -> bool {
    let top = source.top().max(target.top());
    cokernels.iter().all(AbelianGroup::is_zero) && (0..top).all(|n| source.homology(n) == target.homology(n))
}

fn describe(groups: &[AbelianGroup]) -> String {
    let parts: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn block_sum(a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
    let top = a.top().max(b.top());
    let dim = |c: &ChainComplex, n: usize| c.dims.get(n).copied().unwrap_or(0);
    let dims: Vec<usize> = (0..top).map(|n| dim(a, n) + dim(b, n)).collect();
    let maps = (0..top)
        .map(|n| {
            let rows = if n == 0 { 0 } else { dims[n - 1] };
            let (ra, ca) = (if n == 0 { 0 } else { dim(a, n - 1) }, dim(a, n));
            IntMatrix::from_fn(rows, dims[n], |i, j| {
                if i < ra && j < ca {
                    a.maps[n].get(i, j).clone()
                } else if i >= ra && j >= ca && n < b.top() {
                    b.maps[n].get(i - ra, j - ca).clone()
                } else {
                    BigInt::from(0)
                }
            })
        })
        .collect();
    ChainComplex::new(Direction::Homological, dims, maps).expect("sum of complexes")
}

/// Verifies `0 → C(X) ⊕ C(Y) → C(X * Y) → ΣC(X × Y) → 0` at chain level and
/// the resulting formula `H̃_{n+1}(X * Y) ≅ ⊕ H̃_i X ⊗ H̃_j Y ⊕ ⊕ Tor(H̃_i X, H̃_j Y)`.
pub fn join_sequence_check(x: &GCWComplex, y: &GCWComplex) -> Result<Vec<Certificate>, GcwError> {
    let j = x.join(y)?;
    let p = x.product(y)?;
    let (nx, ny) = (x.len(), y.len());
    let mut certs = Vec::new();

    // inclusion of X ⊔ Y as a subcomplex
    let sum = block_sum(&x.chains(), &y.chains());
    let components = (0..sum.top())
        .map(|n| {
            let xs = x.cells_of_dim(n);
            let ys = y.cells_of_dim(n);
            let rows = j.cells_of_dim(n).len();
            let mut m = IntMatrix::zeros(rows, xs.len() + ys.len());
            for (col, &c) in xs.iter().enumerate() {
                *m.get_mut(j.position(c), col) += 1;
            }
            for (col, &c) in ys.iter().enumerate() {
                *m.get_mut(j.position(nx + c), xs.len() + col) += 1;
            }
            m
        })
        .collect();
    let inclusion = ChainMap { components };
    let jc = j.chains();
    certs.push(Certificate::new(
        "join-subcomplex",
        inclusion.check(&sum, &jc).is_ok(),
        "X ⊔ Y includes as a subcomplex of X * Y",
    ));

    // the quotient is the shifted product, with sign (-1)^|x| on [x, y]
    let mut quotient_ok = true;
    for (xi, cx) in x.cells().iter().enumerate() {
        for yi in 0..ny {
            let pair = nx + ny + xi * ny + yi;
            let sign = if cx.dim % 2 == 0 { 1 } else { -1 };
            let mut lhs: Vec<(usize, i64)> = j
                .boundary(pair)
                .iter()
                .filter(|(f, _)| *f >= nx + ny)
                .map(|&(f, a)| (f - nx - ny, a * if x.cells()[(f - nx - ny) / ny].dim % 2 == 0 { 1 } else { -1 }))
                .collect();
            let mut rhs: Vec<(usize, i64)> = p.boundary(xi * ny + yi).iter().map(|&(f, a)| (f, -sign * a)).collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            quotient_ok &= lhs == rhs;
        }
    }
    certs.push(Certificate::new("join-quotient", quotient_ok, "X * Y / (X ⊔ Y) is the suspension of X × Y"));

    let ranks_ok = (0..j.top()).all(|n| {
        let below = if n == 0 { 0 } else { p.cells_of_dim(n - 1).len() };
        j.cells_of_dim(n).len() == x.cells_of_dim(n).len() + y.cells_of_dim(n).len() + below
    });
    certs.push(Certificate::new("join-exact", ranks_ok, "cell counts split as X, Y and shifted X × Y"));

    if x.is_empty() || y.is_empty() {
        certs.push(Certificate::pass("join-kunneth", "one factor is empty"));
        return Ok(certs);
    }
    let (hx, hy, hj) = (x.reduced_homology(), y.reduced_homology(), j.reduced_homology());
    let top = j.top() + 1;
    let mut expected = vec![AbelianGroup::zero(); top];
    for (a, ga) in hx.degrees.iter().enumerate() {
        for (b, gb) in hy.degrees.iter().enumerate() {
            if a + b + 1 < top {
                expected[a + b + 1] = expected[a + b + 1].direct_sum(&ga.tensor(gb));
            }
            if a + b + 2 < top {
                expected[a + b + 2] = expected[a + b + 2].direct_sum(&ga.tor(gb));
            }
        }
    }
    let kunneth = (0..top).all(|n| hj.at(n) == expected[n]);
    certs.push(Certificate::new(
        "join-kunneth",
        kunneth,
        format!("H̃(X*Y) = {} expected {}", hj, describe(&expected)),
    ));
    Ok(certs)
}

/// Chain map from `X^H` to `(X/G_1)^H̄` induced by the projection.
fn fixed_projection(
    x: &GCWComplex,
    quotient: &GCWComplex,
    proj: &[SignedCell],
    h: usize,
    h_bar: usize,
) -> Result<(ChainComplex, ChainComplex, ChainMap), GcwError> {
    let src_cells = x.fixed_cells(h)?;
    let tgt_cells = quotient.fixed_cells(h_bar)?;
    let src = x.fixed_subcomplex(h)?;
    let tgt = quotient.fixed_subcomplex(h_bar)?;
    let mut images = Vec::with_capacity(src_cells.len());
    for &c in &src_cells {
        let (o, s) = proj[c];
        let idx = tgt_cells.binary_search(&o).map_err(|_| {
            GcwError::HypothesisViolated(format!("image of the fixed cell {c} is not fixed in the quotient"))
        })?;
        images.push((idx, s));
    }
    let map = src.cellular_chain_map(&tgt, &images);
    Ok((src.chains(), tgt.chains(), map))
}

/// Certificates for the orbit map `X → X/G_1` of a decomposition `G = G_1 ⋊ G_2`.
///
/// Requires every isotropy group to be subconjugate to `G_2` or to be all of
/// `G`; cells fixed by the whole group change nothing in either argument.
/// For each `H ⊆ G_2`, the cokernel of `H_*(X^H) → H_*((X/G_1)^H)` must be
/// annihilated by `|C_{G_1}(H)|`. When `G_1` has odd prime order and `G_2`
/// order 2 the dihedral refinements are checked as well: the top cokernel
/// is `p`-primary and `C_2`-fixed points map isomorphically.
pub fn orbit_map_checks(x: &GCWComplex, d: &SemidirectDecomposition) -> Result<Vec<Certificate>, GcwError> {
    let lat = x.lattice().clone();
    let grp = lat.group();
    let (g1, g2) = (d.normal_part, d.complement);
    for c in 0..x.len() {
        let st = x.stabilizer(c);
        if st != lat.whole() && !lat.is_subconjugate(st, g2) {
            return Err(GcwError::HypothesisViolated(format!(
                "cell {} has isotropy {} not subconjugate to the complement",
                x.cells()[c].label,
                lat.describe(st)
            )));
        }
    }
    let (quotient, proj) = x.orbit_projection(g1)?;
    let (_, elem_proj) = grp.quotient(lat.subgroup(g1).elements(), "Q")?;
    let qlat = quotient.lattice().clone();
    let image_of = |h: usize| -> usize {
        let mut img: Vec<usize> = lat.subgroup(h).elements().iter().map(|&g| elem_proj[g]).collect();
        img.sort_unstable();
        img.dedup();
        qlat.find(&img).expect("image of a subgroup")
    };
    let mut certs = Vec::new();
    for h in lat.level_classes(g2).reps() {
        let (src, tgt, map) = fixed_projection(x, &quotient, &proj, h, image_of(h))?;
        let coks = cokernels(&src, &tgt, &map)?;
        let ph = lat.centralizer_in(g1, lat.subgroup(h).elements());
        let bound = BigInt::from(lat.order_of(ph));
        let ok = coks.iter().all(|c| c.annihilated_by(&bound));
        let iso = is_isomorphism(&src, &tgt, &coks);
        certs.push(Certificate::new(
            format!("genuniorb[{}]", lat.describe(h)),
            ok,
            format!(
                "cokernels {} killed by |P_H| = {bound}; {}",
                describe(&coks),
                if iso { "an isomorphism" } else { "not an isomorphism" }
            ),
        ));
    }
    let p = lat.order_of(g1) as u64;
    if lat.order_of(g2) == 2 && p > 2 && crate::arith::is_prime(p) {
        let map = x.cellular_chain_map(&quotient, &proj);
        let coks = cokernels(&x.chains(), &quotient.chains(), &map)?;
        let primary = coks.iter().all(|c| {
            c.rank == 0 && c.torsion.iter().all(|t| t.to_u64().is_some_and(|t| prime_factors(t).iter().all(|&q| q == p)))
        });
        certs.push(Certificate::new("eqorduni-a", primary, format!("cokernels {} are {p}-primary", describe(&coks))));
        for c2 in (0..lat.len()).filter(|&k| lat.order_of(k) == 2) {
            let (src, tgt, map) = fixed_projection(x, &quotient, &proj, c2, image_of(c2))?;
            let coks = cokernels(&src, &tgt, &map)?;
            let iso = is_isomorphism(&src, &tgt, &coks);
            certs.push(Certificate::new(
                format!("eqorduni-b[{}]", lat.describe(c2)),
                iso,
                format!("H(X^C2) = {} maps onto H((X/Cp)^C2)", describe(&src.all_homology())),
            ));
        }
    }
    Ok(certs)
}
