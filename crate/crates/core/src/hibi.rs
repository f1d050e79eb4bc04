//! Monomial parametrizations of a lattice and its Hibi binomials.
//!
//! Each lattice element `I` maps to `u_I = prod_{i in I} z_i prod_{i not in I} y_i`
//! and to `u'_I = prod_{i in I} z_i`. The binomials `p_I p_J - p_{I∩J} p_{I∪J}`
//! over incomparable pairs lie in the kernel of both maps.

use crate::error::{domain, Result};
use crate::lattice::{canonical_chain, DistributiveLattice};
use crate::set::{GroundSet, IndexSet};

/// Squarefree monomial in the paired variables `z_i`, `y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarefreeMonomial {
    pub z: IndexSet,
    pub y: IndexSet,
}

impl SquarefreeMonomial {
    pub fn unit() -> Self {
        SquarefreeMonomial { z: IndexSet::new(), y: IndexSet::new() }
    }

    pub fn degree(&self) -> usize {
        self.z.len() + self.y.len()
    }

    pub fn is_unit(&self) -> bool {
        self.z.is_empty() && self.y.is_empty()
    }

    /// `z_a*z_b*y_c`, labels in ground order; the unit renders as `1`.
    pub fn render(&self, ground: &GroundSet) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        let z = self.z.iter().map(|i| format!("z_{}", ground.label(i)));
        let y = self.y.iter().map(|i| format!("y_{}", ground.label(i)));
        z.chain(y).collect::<Vec<_>>().join("*")
    }
}

/// Exponent vector of a product of monomials, z-block then y-block.
fn exponents(factors: &[&SquarefreeMonomial], n: usize) -> Vec<u32> {
    let mut e = vec![0u32; 2 * n];
    for m in factors {
        for i in m.z.iter() {
            e[i] += 1;
        }
        for i in m.y.iter() {
            e[n + i] += 1;
        }
    }
    e
}

/// Binomial `p_I p_J - p_{I∩J} p_{I∪J}` stored by its index sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HibiBinomial {
    pub i: IndexSet,
    pub j: IndexSet,
}

impl HibiBinomial {
    pub fn new(i: IndexSet, j: IndexSet) -> Self {
        HibiBinomial { i, j }
    }

    pub fn lhs(&self) -> (&IndexSet, &IndexSet) {
        (&self.i, &self.j)
    }

    pub fn rhs(&self) -> (IndexSet, IndexSet) {
        (self.i.intersection(&self.j), self.i.union(&self.j))
    }

    pub fn is_degenerate(&self) -> bool {
        self.i.is_subset(&self.j) || self.j.is_subset(&self.i)
    }

    /// `p_{23}*p_{34}-p_{3}*p_{234}`.
    pub fn render(&self, ground: &GroundSet) -> String {
        let (m, u) = self.rhs();
        let p = |s: &IndexSet| format!("p_{{{}}}", ground.render_bare(s));
        format!("{}*{}-{}*{}", p(&self.i), p(&self.j), p(&m), p(&u))
    }
}

/// Comma separated binomials in braces, as accepted by computer algebra
/// systems for ideal input.
pub fn render_binomial_list(ground: &GroundSet, bs: &[HibiBinomial]) -> String {
    let items: Vec<String> = bs.iter().map(|b| b.render(ground)).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn monomial_u(l: &DistributiveLattice, i: &IndexSet) -> Result<SquarefreeMonomial> {
    l.require(i)?;
    Ok(SquarefreeMonomial { z: i.clone(), y: l.ground().full().difference(i) })
}

pub fn monomial_u_prime(l: &DistributiveLattice, i: &IndexSet) -> Result<SquarefreeMonomial> {
    l.require(i)?;
    Ok(SquarefreeMonomial { z: i.clone(), y: IndexSet::new() })
}

/// One binomial per incomparable pair, the smaller element (in element
/// order) first.
pub fn hibi_generators(l: &DistributiveLattice) -> Vec<HibiBinomial> {
    l.incomparable_pairs()
        .into_iter()
        .map(|(a, b)| HibiBinomial::new(l.element(a).clone(), l.element(b).clone()))
        .collect()
}

/// Smallest lattice element containing `label`.
pub fn smallest_containing(l: &DistributiveLattice, label: &str) -> Result<IndexSet> {
    let i = l
        .ground()
        .index_of(label)
        .ok_or_else(|| domain(format!("label '{label}' is not in the ground set")))?;
    l.elements()
        .iter()
        .filter(|s| s.contains(i))
        .cloned()
        .reduce(|a, b| a.intersection(&b))
        .ok_or_else(|| domain(format!("no lattice element contains '{label}'")))
}

/// `g_i`: the z-monomial of the smallest lattice element containing `label`.
pub fn generator_g(l: &DistributiveLattice, label: &str) -> Result<SquarefreeMonomial> {
    let s = smallest_containing(l, label)?;
    monomial_u_prime(l, &s)
}

/// Per join-irreducible generator, keyed by the labels it introduces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGenerator {
    pub join_irreducible: IndexSet,
    /// Labels first appearing at this join-irreducible.
    pub increment: IndexSet,
    pub monomial: SquarefreeMonomial,
    /// More than one label is introduced at once, so no single `g_i` names it.
    pub ambiguous: bool,
}

pub fn g_generators(l: &DistributiveLattice) -> Vec<GGenerator> {
    l.join_irreducible_positions()
        .into_iter()
        .map(|k| {
            let ji = l.element(k).clone();
            let below = l.element(l.lower_covers(k)[0]);
            let increment = ji.difference(below);
            GGenerator {
                ambiguous: increment.len() > 1,
                monomial: SquarefreeMonomial { z: ji.clone(), y: IndexSet::new() },
                join_irreducible: ji,
                increment,
            }
        })
        .collect()
}

/// Increments along a saturated chain from the bottom to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZFactorization {
    pub target: IndexSet,
    pub factors: Vec<IndexSet>,
}

impl ZFactorization {
    pub fn from_chain(chain: &[IndexSet]) -> Self {
        let factors = chain.windows(2).map(|w| w[1].difference(&w[0])).collect();
        ZFactorization { target: chain.last().cloned().unwrap_or_default(), factors }
    }

    /// Product of the factors as a z-monomial (factors are disjoint).
    pub fn product(&self) -> SquarefreeMonomial {
        let z = self.factors.iter().fold(IndexSet::new(), |acc, f| acc.union(f));
        SquarefreeMonomial { z, y: IndexSet::new() }
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|f| format!("z_{{{}}}", ground.render_bare(f)))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Factor `p_J` along the canonical chain (least cover at each step).
pub fn z_factorization(l: &DistributiveLattice, j: &IndexSet) -> Result<ZFactorization> {
    let chain = canonical_chain(l, j)?;
    Ok(ZFactorization::from_chain(&chain))
}

/// Whether `b` maps to zero under both `p_I -> u_I` and `p_I -> u'_I`,
/// comparing monomial products as exponent vectors.
pub fn kernel_membership(l: &DistributiveLattice, b: &HibiBinomial) -> bool {
    let (m, u) = b.rhs();
    let n = l.ground().len();
    let full = l.ground().full();
    let u_of = |s: &IndexSet| SquarefreeMonomial { z: s.clone(), y: full.difference(s) };
    let up_of = |s: &IndexSet| SquarefreeMonomial { z: s.clone(), y: IndexSet::new() };
    let (ui, uj, um, uu) = (u_of(&b.i), u_of(&b.j), u_of(&m), u_of(&u));
    let (pi, pj, pm, pu) = (up_of(&b.i), up_of(&b.j), up_of(&m), up_of(&u));
    exponents(&[&ui, &uj], n) == exponents(&[&um, &uu], n)
        && exponents(&[&pi, &pj], n) == exponents(&[&pm, &pu], n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{lattice_from_generators, saturated_chains};

    fn fig1() -> DistributiveLattice {
        let g = GroundSet::numbered(5);
        let gens: Vec<IndexSet> = ["123", "234", "345"].iter().map(|s| g.parse_set(s).unwrap()).collect();
        lattice_from_generators(&g, &gens).unwrap()
    }

    fn s(l: &DistributiveLattice, t: &str) -> IndexSet {
        l.ground().parse_set(t).unwrap()
    }

    #[test]
    fn u_monomials_of_running_example() {
        let l = fig1();
        let g = l.ground();
        assert_eq!(monomial_u(&l, &s(&l, "3")).unwrap().render(g), "z_3*y_1*y_2*y_4*y_5");
        assert_eq!(monomial_u(&l, &IndexSet::new()).unwrap().render(g), "y_1*y_2*y_3*y_4*y_5");
        let top = monomial_u(&l, &s(&l, "12345")).unwrap();
        assert_eq!(top.render(g), "z_1*z_2*z_3*z_4*z_5");
        assert!(top.y.is_empty());
        assert!(monomial_u(&l, &s(&l, "12")).is_err());
        for e in l.elements() {
            assert_eq!(monomial_u(&l, e).unwrap().degree(), 5);
        }
    }

    #[test]
    fn u_prime_monomials() {
        let l = fig1();
        let g = l.ground();
        assert_eq!(monomial_u_prime(&l, &s(&l, "23")).unwrap().render(g), "z_2*z_3");
        assert!(monomial_u_prime(&l, &IndexSet::new()).unwrap().is_unit());
        assert_eq!(monomial_u_prime(&l, &s(&l, "345")).unwrap().render(g), "z_3*z_4*z_5");
    }

    #[test]
    fn generators_of_running_example() {
        let l = fig1();
        let bs = hibi_generators(&l);
        let g = l.ground();
        let b = bs.iter().find(|b| b.i == s(&l, "23") && b.j == s(&l, "34")).unwrap();
        assert_eq!(b.rhs(), (s(&l, "3"), s(&l, "234")));
        assert_eq!(b.render(g), "p_{23}*p_{34}-p_{3}*p_{234}");
        // exhaustive scan of unordered pairs
        let els = l.elements();
        let mut count = 0;
        for a in 0..els.len() {
            for c in (a + 1)..els.len() {
                if !els[a].is_subset(&els[c]) && !els[c].is_subset(&els[a]) {
                    count += 1;
                }
            }
        }
        assert_eq!(bs.len(), count);
        assert!(bs.iter().all(|b| !b.is_degenerate()));
        assert!(bs.iter().all(|b| kernel_membership(&l, b)));
    }

    #[test]
    fn chain_lattice_has_no_binomials() {
        let g = GroundSet::numbered(3);
        let gens: Vec<IndexSet> = ["1", "12", "123"].iter().map(|t| g.parse_set(t).unwrap()).collect();
        let l = lattice_from_generators(&g, &gens).unwrap();
        assert!(hibi_generators(&l).is_empty());
    }

    #[test]
    fn g_generators_of_running_example() {
        let l = fig1();
        let g = l.ground();
        let r = |lab: &str| generator_g(&l, lab).unwrap().render(g);
        assert_eq!(r("1"), "z_1*z_2*z_3");
        assert_eq!(r("2"), "z_2*z_3");
        assert_eq!(r("3"), "z_3");
        assert_eq!(r("4"), "z_3*z_4");
        assert_eq!(r("5"), "z_3*z_4*z_5");
        assert!(generator_g(&l, "9").is_err());
        for gg in g_generators(&l) {
            assert!(!gg.ambiguous);
            let lab = g.label(gg.increment.iter().next().unwrap());
            assert_eq!(generator_g(&l, lab).unwrap(), gg.monomial);
        }
    }

    #[test]
    fn multi_label_increment_is_flagged() {
        let g = GroundSet::numbered(3);
        let gens = vec![g.parse_set("12").unwrap(), g.parse_set("123").unwrap()];
        let l = lattice_from_generators(&g, &gens).unwrap();
        let gg = g_generators(&l);
        assert_eq!(gg.len(), 2);
        assert!(gg[0].ambiguous);
        assert_eq!(g.render(&gg[0].increment), "12");
        assert!(!gg[1].ambiguous);
        assert!(generator_g(&l, "1").is_ok());
    }

    #[test]
    fn label_outside_every_element() {
        let g = GroundSet::numbered(3);
        let l = lattice_from_generators(&g, &[g.parse_set("12").unwrap()]).unwrap();
        assert!(generator_g(&l, "3").is_err());
    }

    #[test]
    fn z_factorizations() {
        let l = fig1();
        let f = z_factorization(&l, &s(&l, "123")).unwrap();
        let g = l.ground();
        let names: Vec<String> = f.factors.iter().map(|x| g.render(x)).collect();
        assert_eq!(names, vec!["3", "2", "1"]);
        assert!(z_factorization(&l, &IndexSet::new()).unwrap().factors.is_empty());
        assert!(z_factorization(&l, &s(&l, "12")).is_err());

        // chain independence for 234: every saturated chain gives z2 z3 z4
        let target = s(&l, "234");
        let chains = saturated_chains(&l, &IndexSet::new(), &target).unwrap();
        assert_eq!(chains.len(), 2);
        for c in chains {
            let zf = ZFactorization::from_chain(&c);
            assert_eq!(zf.product().render(g), "z_2*z_3*z_4");
        }
    }

    #[test]
    fn degenerate_binomials_are_in_kernel() {
        let l = fig1();
        let b = HibiBinomial::new(s(&l, "3"), s(&l, "123"));
        assert!(b.is_degenerate());
        assert!(kernel_membership(&l, &b));
    }

    #[test]
    fn non_lattice_binomial_fails_kernel_check() {
        // the exponent check is set arithmetic, so it holds for any pair of
        // sets; a mismatched right-hand side must be detected instead
        let l = fig1();
        let n = l.ground().len();
        let a = SquarefreeMonomial { z: s(&l, "23"), y: IndexSet::new() };
        let b = SquarefreeMonomial { z: s(&l, "34"), y: IndexSet::new() };
        let c = SquarefreeMonomial { z: s(&l, "3"), y: IndexSet::new() };
        let d = SquarefreeMonomial { z: s(&l, "2345"), y: IndexSet::new() };
        assert_ne!(exponents(&[&a, &b], n), exponents(&[&c, &d], n));
    }
}
