use super::{check_cap, FiniteGroup, GroupError, DEFAULT_ORDER_CAP};

fn build(label: String, n: usize, cap: usize, product: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup, GroupError> {
    check_cap(n, cap)?;
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = product(a, b);
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(label, n, table))
}

impl FiniteGroup {
    /// `C_n`, element `k` being the `k`-th power of a generator.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadArguments("cyclic group of order 0".into()));
        }
        build(format!("C{n}"), n, DEFAULT_ORDER_CAP, |a, b| (a + b) % n)
    }

    /// `D_order`, the dihedral group with `order = 2n` elements.
    ///
    /// Element `b*n + a` is `zeta^a tau^b`; `tau zeta tau = zeta^-1`.
    pub fn dihedral(order: usize) -> Result<Self, GroupError> {
        if order < 2 || order % 2 != 0 {
            return Err(GroupError::BadArguments(format!("dihedral order {order} must be even and positive")));
        }
        let n = order / 2;
        build(format!("D{order}"), order, DEFAULT_ORDER_CAP, |x, y| {
            let (a1, b1) = (x % n, x / n);
            let (a2, b2) = (y % n, y / n);
            let a = if b1 == 0 { (a1 + a2) % n } else { (a1 + n - a2) % n };
            ((b1 + b2) % 2) * n + a
        })
    }

    /// Index of `zeta^a tau^b` in [`FiniteGroup::dihedral`] of order `2n`.
    pub fn dihedral_element(n: usize, a: i64, b: i64) -> usize {
        let a = a.rem_euclid(n as i64) as usize;
        let b = b.rem_euclid(2) as usize;
        b * n + a
    }

    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        Self::symmetric_capped(n, DEFAULT_ORDER_CAP)
    }

    pub fn symmetric_capped(n: usize, cap: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadArguments("symmetric group on no letters".into()));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations_capped(format!("S{n}"), &gens, n, cap)
    }

    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadArguments("alternating group on no letters".into()));
        }
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        Self::from_permutations(format!("A{n}"), &gens, n)
    }

    /// Dicyclic group of order `4n`: `x^(2n) = 1`, `y^2 = x^n`, `y x y^-1 = x^-1`.
    ///
    /// Element `b*2n + a` is `x^a y^b`.
    pub fn dicyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadArguments("dicyclic parameter must be positive".into()));
        }
        let m = 2 * n;
        build(format!("Dic{}", 4 * n), 4 * n, DEFAULT_ORDER_CAP, |x, y| {
            let (a1, b1) = (x % m, x / m);
            let (a2, b2) = (y % m, y / m);
            match (b1, b2) {
                (0, b) => b * m + (a1 + a2) % m,
                (1, 0) => m + (a1 + m - a2) % m,
                _ => (a1 + m - a2 + n) % m,
            }
        })
    }

    /// The quaternion group `Q_8`.
    pub fn quaternion() -> Result<Self, GroupError> {
        Ok(Self::dicyclic(2)?.with_label("Q8"))
    }

    /// `G x H`, element `g*|H| + h` being `(g, h)`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self, GroupError> {
        let m = h.order();
        build(format!("{}x{}", g.label(), h.label()), g.order() * m, DEFAULT_ORDER_CAP, |x, y| {
            g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
        })
    }

    /// `N ⋊ K` where `action[k]` is the automorphism of `N` given by `k`, as a
    /// permutation of `N`'s elements. Element `k*|N| + n` is `(n, k)`, with
    /// `(n1, k1)(n2, k2) = (n1 * action[k1](n2), k1 k2)`.
    pub fn semidirect_product(
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<usize>],
    ) -> Result<Self, GroupError> {
        let nn = normal.order();
        if action.len() != acting.order() {
            return Err(GroupError::InvalidAction("one automorphism per acting element required".into()));
        }
        for (k, phi) in action.iter().enumerate() {
            if phi.len() != nn || {
                let mut seen = vec![false; nn];
                phi.iter().any(|&x| x >= nn || std::mem::replace(&mut seen[x], true))
            } {
                return Err(GroupError::InvalidAction(format!("image of {k} is not a permutation")));
            }
            for a in 0..nn {
                for b in 0..nn {
                    if phi[normal.mul(a, b)] != normal.mul(phi[a], phi[b]) {
                        return Err(GroupError::InvalidAction(format!("image of {k} is not a homomorphism")));
                    }
                }
            }
        }
        for k1 in 0..acting.order() {
            for k2 in 0..acting.order() {
                let composed: Vec<usize> = (0..nn).map(|x| action[k1][action[k2][x]]).collect();
                if composed != action[acting.mul(k1, k2)] {
                    return Err(GroupError::InvalidAction("action is not a homomorphism".into()));
                }
            }
        }
        build(
            format!("{}:{}", normal.label(), acting.label()),
            nn * acting.order(),
            DEFAULT_ORDER_CAP,
            |x, y| {
                let (n1, k1) = (x % nn, x / nn);
                let (n2, k2) = (y % nn, y / nn);
                acting.mul(k1, k2) * nn + normal.mul(n1, action[k1][n2])
            },
        )
    }

    /// `C_n ⋊ C_m` with the generator of `C_m` acting by `x -> x^r`.
    pub fn semidirect_cyclic(n: usize, m: usize, r: usize) -> Result<Self, GroupError> {
        let normal = Self::cyclic(n)?;
        let acting = Self::cyclic(m)?;
        let mut power = 1usize;
        let mut action = Vec::with_capacity(m);
        for _ in 0..m {
            action.push((0..n).map(|x| (x * power) % n).collect());
            power = (power * r) % n.max(1);
        }
        Ok(Self::semidirect_product(&normal, &acting, &action)?.with_label(format!("C{n}:C{m}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_shapes() {
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::alternating(4).unwrap().order(), 12);
        let q8 = FiniteGroup::quaternion().unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!((0..8).filter(|&g| q8.element_order(g) == 2).count(), 1);
        let d8 = FiniteGroup::dihedral(8).unwrap();
        assert_eq!((0..8).filter(|&g| d8.element_order(g) == 2).count(), 5);
        assert!(!d8.is_abelian());
        let c3c7 = FiniteGroup::semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(c3c7.order(), 21);
        assert!(!c3c7.is_abelian());
        assert!(FiniteGroup::semidirect_cyclic(7, 3, 3).is_err());
    }

    #[test]
    fn dihedral_relations() {
        let n = 5;
        let g = FiniteGroup::dihedral(2 * n).unwrap();
        let zeta = FiniteGroup::dihedral_element(n, 1, 0);
        let tau = FiniteGroup::dihedral_element(n, 0, 1);
        assert_eq!(g.element_order(zeta), n);
        assert_eq!(g.element_order(tau), 2);
        assert_eq!(g.conj(tau, zeta), g.inv(zeta));
    }

    #[test]
    fn products() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let c5 = FiniteGroup::cyclic(5).unwrap();
        let p = FiniteGroup::direct_product(&s3, &c5).unwrap();
        assert_eq!(p.order(), 30);
        assert!(FiniteGroup::from_table("copy", p.table()).is_ok());
    }
}
