//! Products of monomials by exponent addition, projected back onto the
//! family list at the target degree.

use std::collections::HashMap;

use serde::Serialize;

use super::rings::{classify, enumerate};
use super::{ClassMonomial, RODegree, Ring, RoqError};

/// `coeff` times the generator `monomial` of a cyclic summand of the given order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    pub coeff: i64,
    pub monomial: ClassMonomial,
    pub order: u64,
}

impl Element {
    /// Reads a monomial as a multiple of its family generator; an absent
    /// index means the generator itself.
    pub fn from_monomial(ring: Ring, p: u64, mono: ClassMonomial, index: Option<u64>) -> Result<Self, RoqError> {
        let f = classify(ring, &mono).ok_or_else(|| RoqError::ZeroInput(mono.name().render(ring)))?;
        let generator = f.index(p);
        let given = index.unwrap_or(generator);
        if given % generator != 0 {
            return Err(RoqError::BadIndex { monomial: mono.name().render(ring), given, generator });
        }
        let order = f.order(p);
        let coeff = (given / generator) as i64;
        if order > 0 && coeff % order as i64 == 0 {
            return Err(RoqError::ZeroInput(mono.with_index(given).render(ring)));
        }
        Ok(Element { coeff, monomial: mono.with_index(generator), order })
    }

    pub fn generator(ring: Ring, p: u64, mono: ClassMonomial) -> Result<Self, RoqError> {
        Self::from_monomial(ring, p, mono, None)
    }

    pub fn render(&self, ring: Ring) -> String {
        let total = self.coeff.unsigned_abs() * self.monomial.index;
        let sign = if self.coeff < 0 { "-" } else { "" };
        format!("{sign}{}", self.monomial.with_index(total).render(ring))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Product {
    Zero,
    Element(Element),
    /// The exponent pattern fits no family but the target group is nonzero.
    Undetermined { pattern: ClassMonomial, degree: RODegree },
}

impl Product {
    pub fn render(&self, ring: Ring) -> String {
        match self {
            Product::Zero => "0".into(),
            Product::Element(e) => e.render(ring),
            Product::Undetermined { pattern, .. } => format!("UNDETERMINED({})", pattern.render(ring)),
        }
    }

    pub fn is_determined(&self) -> bool {
        !matches!(self, Product::Undetermined { .. })
    }
}

fn product_with(ring: Ring, p: u64, x: &Element, y: &Element, zero_at: &mut dyn FnMut(RODegree) -> bool) -> Product {
    let (u, v) = (x.monomial, y.monomial);
    let raw = ClassMonomial::new(u.a + v.a, u.b + v.b, u.c + v.c, u.d + v.d, u.shift + v.shift, 1);
    let degree = u.degree(ring) + v.degree(ring);
    if zero_at(degree) {
        return Product::Zero;
    }
    let Some(f) = classify(ring, &raw) else {
        return Product::Undetermined { pattern: raw, degree };
    };
    let total = x.coeff * y.coeff * (u.index * v.index) as i64;
    let generator = f.index(p) as i64;
    if total % generator != 0 {
        return Product::Undetermined { pattern: raw.with_index(u.index * v.index), degree };
    }
    let order = f.order(p);
    let mut coeff = total / generator;
    if order > 0 {
        coeff = coeff.rem_euclid(order as i64);
        if coeff == 0 {
            return Product::Zero;
        }
    }
    Product::Element(Element { coeff, monomial: raw.with_index(f.index(p)), order })
}

pub fn multiply_elements(ring: Ring, p: u64, x: &Element, y: &Element) -> Product {
    product_with(ring, p, x, y, &mut |d| enumerate(ring, p, d).is_zero())
}

/// Product of two family generators (or multiples given by their index).
pub fn multiply(ring: Ring, p: u64, x: &ClassMonomial, y: &ClassMonomial) -> Result<Product, RoqError> {
    super::check_prime(p)?;
    let x = Element::from_monomial(ring, p, *x, Some(x.index))?;
    let y = Element::from_monomial(ring, p, *y, Some(y.index))?;
    Ok(multiply_elements(ring, p, &x, &y))
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RingLawReport {
    pub generators: usize,
    pub pairs: usize,
    pub triples: usize,
    pub unit_failures: Vec<String>,
    pub commutativity_failures: Vec<String>,
    pub associativity_failures: Vec<String>,
    pub associativity_failure_count: usize,
    /// Triples with an undetermined intermediate or final product.
    pub undetermined: usize,
}

impl RingLawReport {
    pub fn passed(&self) -> bool {
        self.unit_failures.is_empty() && self.commutativity_failures.is_empty() && self.associativity_failure_count == 0
    }
}

/// Unit, commutativity and associativity on the generators of every degree
/// with `|k| ≤ bk`, `|m| ≤ bm`, `|n| ≤ bn`. Only determined products are
/// compared; the rest are counted.
pub fn ring_law_check(ring: Ring, p: u64, bk: i64, bm: i64, bn: i64) -> Result<RingLawReport, RoqError> {
    super::check_prime(p)?;
    let mut zero_cache: HashMap<RODegree, bool> = HashMap::new();
    let mut zero_at = |d: RODegree| *zero_cache.entry(d).or_insert_with(|| enumerate(ring, p, d).is_zero());
    let mut gens = Vec::new();
    for k in -bk..=bk {
        for m in -bm..=bm {
            for n in -bn..=bn {
                for s in enumerate(ring, p, RODegree::new(k, m, n)).summands {
                    gens.push(Element { coeff: 1, monomial: s.monomial, order: s.order });
                }
            }
        }
    }
    let mut report = RingLawReport { generators: gens.len(), ..Default::default() };
    let unit = Element::generator(ring, p, ClassMonomial::unit())?;
    let mut pair: HashMap<(usize, usize), Product> = HashMap::new();
    for (i, x) in gens.iter().enumerate() {
        let ux = product_with(ring, p, &unit, x, &mut zero_at);
        if ux != Product::Element(*x) {
            report.unit_failures.push(format!("1 * {} = {}", x.render(ring), ux.render(ring)));
        }
        for (j, y) in gens.iter().enumerate() {
            let xy = product_with(ring, p, x, y, &mut zero_at);
            let yx = product_with(ring, p, y, x, &mut zero_at);
            if xy != yx {
                report.commutativity_failures.push(format!("{} * {}", x.render(ring), y.render(ring)));
            }
            pair.insert((i, j), xy);
            report.pairs += 1;
        }
    }
    let times = |a: &Product, z: &Element, zero_at: &mut dyn FnMut(RODegree) -> bool| match a {
        Product::Zero => Product::Zero,
        Product::Element(e) => product_with(ring, p, e, z, zero_at),
        u @ Product::Undetermined { .. } => u.clone(),
    };
    let times_left = |x: &Element, a: &Product, zero_at: &mut dyn FnMut(RODegree) -> bool| match a {
        Product::Zero => Product::Zero,
        Product::Element(e) => product_with(ring, p, x, e, zero_at),
        u @ Product::Undetermined { .. } => u.clone(),
    };
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            for k in 0..gens.len() {
                report.triples += 1;
                let left = times(&pair[&(i, j)], &gens[k], &mut zero_at);
                let right = times_left(&gens[i], &pair[&(j, k)], &mut zero_at);
                if !left.is_determined() || !right.is_determined() {
                    report.undetermined += 1;
                } else if left != right {
                    report.associativity_failure_count += 1;
                    if report.associativity_failures.len() >= 20 {
                        continue;
                    }
                    report.associativity_failures.push(format!(
                        "({} {} {}): {} vs {}",
                        gens[i].render(ring),
                        gens[j].render(ring),
                        gens[k].render(ring),
                        left.render(ring),
                        right.render(ring)
                    ));
                }
            }
        }
    }
    Ok(report)
}
