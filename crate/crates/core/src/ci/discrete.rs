use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, LciError, Result};
use crate::scalar::Scalar;
use crate::set::{GroundSet, IndexSet};
use crate::tdag::Tdag;

use super::CiStatement;

const SUM_TOL: f64 = 1e-12;

/// Probability table over full assignments, row-major with the last
/// variable varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteJoint<T> {
    ground: GroundSet,
    cards: Vec<usize>,
    table: Vec<T>,
}

impl<T: Scalar> DiscreteJoint<T> {
    pub fn new(ground: GroundSet, cards: Vec<usize>, table: Vec<T>) -> Result<Self> {
        if cards.len() != ground.len() {
            return Err(domain(format!(
                "{} cardinalities for {} variables",
                cards.len(),
                ground.len()
            )));
        }
        if cards.contains(&0) {
            return Err(domain("alphabet sizes must be positive"));
        }
        let size = cards
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .ok_or_else(|| domain("table size overflows"))?;
        if table.len() != size {
            return Err(domain(format!("table has {} entries, expected {size}", table.len())));
        }
        if let Some(k) = table.iter().position(|p| p.is_negative()) {
            return Err(domain(format!("negative probability at cell {k}")));
        }
        let total = table.iter().fold(T::zero(), |acc, p| acc + p.clone());
        if (total.clone() - T::one()).abs() > T::from_f64_lossy(SUM_TOL) {
            return Err(domain(format!("probabilities sum to {total}, not 1")));
        }
        Ok(DiscreteJoint { ground, cards, table })
    }

    /// Uniform distribution.
    pub fn uniform(ground: GroundSet, cards: Vec<usize>) -> Result<Self> {
        let size: usize = cards.iter().product();
        let p = T::one() / T::from_usize(size.max(1)).expect("table size fits the scalar");
        Self::new(ground, cards, vec![p; size])
    }

    /// Product of independent marginals.
    pub fn product(ground: GroundSet, marginals: &[Vec<T>]) -> Result<Self> {
        let cards: Vec<usize> = marginals.iter().map(Vec::len).collect();
        let size: usize = cards.iter().product();
        let strides = strides(&cards);
        let table = (0..size)
            .map(|k| {
                marginals.iter().enumerate().fold(T::one(), |acc, (v, m)| {
                    acc * m[(k / strides[v]) % cards[v]].clone()
                })
            })
            .collect();
        Self::new(ground, cards, table)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    pub fn table(&self) -> &[T] {
        &self.table
    }

    pub fn is_positive(&self) -> bool {
        self.table.iter().all(|p| p.is_positive())
    }

    /// Assignment of the cell with flat index `k`.
    pub fn assignment(&self, k: usize) -> Vec<usize> {
        let s = strides(&self.cards);
        (0..self.cards.len()).map(|v| (k / s[v]) % self.cards[v]).collect()
    }

    /// Add `eps` to one cell and renormalize.
    pub fn perturbed(&self, cell: usize, eps: T) -> Result<Self> {
        if cell >= self.table.len() {
            return Err(domain(format!("cell {cell} out of range")));
        }
        let mut table = self.table.clone();
        table[cell] = table[cell].clone() + eps.clone();
        let total = T::one() + eps;
        let table = table.into_iter().map(|p| p / total.clone()).collect();
        Self::new(self.ground.clone(), self.cards.clone(), table)
    }

    /// Map every entry, e.g. to convert an exact table to floating point.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DiscreteJoint<U> {
        DiscreteJoint {
            ground: self.ground.clone(),
            cards: self.cards.clone(),
            table: self.table.iter().map(f).collect(),
        }
    }
}

fn strides(cards: &[usize]) -> Vec<usize> {
    let mut s = vec![1; cards.len()];
    for v in (0..cards.len().saturating_sub(1)).rev() {
        s[v] = s[v + 1] * cards[v + 1];
    }
    s
}

/// Margin `p_I` over the variables of `I` in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginTable<T> {
    vars: IndexSet,
    cards: Vec<usize>,
    table: Vec<T>,
    // (stride in the full table, card, stride in this table) per variable
    lookup: Vec<(usize, usize, usize)>,
}

impl<T: Clone> MarginTable<T> {
    pub fn vars(&self) -> &IndexSet {
        &self.vars
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    pub fn table(&self) -> &[T] {
        &self.table
    }

    /// Index into this table of the projection of full cell `k`.
    pub fn project(&self, k: usize) -> usize {
        self.lookup.iter().map(|&(fs, c, ms)| ((k / fs) % c) * ms).sum()
    }

    /// `p_I(x_I)` for the full cell `k`.
    pub fn at_full(&self, k: usize) -> &T {
        &self.table[self.project(k)]
    }
}

/// Sum the table over the variables outside `i`.
pub fn margin<T: Scalar>(d: &DiscreteJoint<T>, i: &IndexSet) -> Result<MarginTable<T>> {
    d.ground.check_subset(i)?;
    let full = strides(&d.cards);
    let cards: Vec<usize> = i.iter().map(|v| d.cards[v]).collect();
    let local = strides(&cards);
    let lookup: Vec<(usize, usize, usize)> = i
        .iter()
        .zip(&local)
        .map(|(v, &ms)| (full[v], d.cards[v], ms))
        .collect();
    let mut m = MarginTable {
        vars: i.clone(),
        table: vec![T::zero(); cards.iter().product()],
        cards,
        lookup,
    };
    for (k, p) in d.table.iter().enumerate() {
        let at = m.project(k);
        m.table[at] = m.table[at].clone() + p.clone();
    }
    Ok(m)
}

/// Largest `|p_{I∪J} p_{I∩J} - p_I p_J|` over full assignments.
pub fn hibi_relation_deviation<T: Scalar>(d: &DiscreteJoint<T>, i: &IndexSet, j: &IndexSet) -> Result<T> {
    let pi = margin(d, i)?;
    let pj = margin(d, j)?;
    let pu = margin(d, &i.union(j))?;
    let pm = margin(d, &i.intersection(j))?;
    Ok(max_deviation(d.table.len(), |k| {
        pu.at_full(k).clone() * pm.at_full(k).clone() - pi.at_full(k).clone() * pj.at_full(k).clone()
    }))
}

pub fn check_hibi_relation<T: Scalar>(d: &DiscreteJoint<T>, i: &IndexSet, j: &IndexSet, tol: T) -> Result<bool> {
    Ok(hibi_relation_deviation(d, i, j)? <= tol)
}

/// Largest `|p_{abc} p_c - p_{ac} p_{bc}|` over full assignments.
pub fn ci_deviation<T: Scalar>(d: &DiscreteJoint<T>, s: &CiStatement) -> Result<T> {
    let ac = s.a.union(&s.c);
    let bc = s.b.union(&s.c);
    hibi_relation_deviation(d, &ac, &bc)
}

pub fn check_ci<T: Scalar>(d: &DiscreteJoint<T>, s: &CiStatement, tol: T) -> Result<bool> {
    Ok(ci_deviation(d, s)? <= tol)
}

fn max_deviation<T: Scalar>(cells: usize, f: impl Fn(usize) -> T) -> T {
    (0..cells).fold(T::zero(), |acc, k| T::max_of(acc, f(k).abs()))
}

/// Where the conditional tables of [`joint_from_tdag`] come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionalSource {
    /// Integer weights in `1..=1000` from a seeded ChaCha8 stream, normalized.
    Random(u64),
    Uniform,
}

/// Joint `∏ p(x_i | x_{anc(i)∖i})` with every vertex conditioned on all of its
/// strict ancestors. Conditionals are drawn vertex by vertex in index order,
/// ancestor assignments in row-major order.
pub fn joint_from_tdag<T: Scalar>(g: &Tdag, cards: &[usize], source: ConditionalSource) -> Result<DiscreteJoint<T>> {
    let n = g.vertices().len();
    if cards.len() != n {
        return Err(domain(format!("{} cardinalities for {n} vertices", cards.len())));
    }
    if cards.iter().any(|&c| c < 2) {
        return Err(domain("alphabet sizes must be at least 2"));
    }
    let mut rng = match source {
        ConditionalSource::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        ConditionalSource::Uniform => None,
    };
    let parents: Vec<IndexSet> = (0..n)
        .map(|i| g.edges().iter().filter(|&&(_, j)| j == i).map(|&(a, _)| a).collect())
        .collect();
    // conditional[i][parent assignment][value]
    let mut conditional: Vec<Vec<Vec<T>>> = Vec::with_capacity(n);
    for i in 0..n {
        let rows: usize = parents[i].iter().map(|v| cards[v]).product();
        let table = (0..rows)
            .map(|_| {
                let w: Vec<u32> = match rng.as_mut() {
                    Some(r) => (0..cards[i]).map(|_| r.gen_range(1..=1000)).collect(),
                    None => vec![1; cards[i]],
                };
                let total = T::from_u32(w.iter().sum()).expect("small integer");
                w.into_iter()
                    .map(|x| T::from_u32(x).expect("small integer") / total.clone())
                    .collect()
            })
            .collect();
        conditional.push(table);
    }
    let full = strides(cards);
    let size: usize = cards.iter().product();
    let mut table = Vec::with_capacity(size);
    for k in 0..size {
        let digit = |v: usize| (k / full[v]) % cards[v];
        let mut p = T::one();
        for i in 0..n {
            let row = parents[i].iter().fold(0, |acc, v| acc * cards[v] + digit(v));
            p = p * conditional[i][row][digit(i)].clone();
        }
        table.push(p);
    }
    DiscreteJoint::new(g.ground(), cards.to_vec(), table)
}

/// `q_J = p_{[n]} / p_{[n]∖J}`, one value per full assignment.
pub fn q_margin<T: Scalar>(d: &DiscreteJoint<T>, j: &IndexSet) -> Result<Vec<T>> {
    d.ground.check_subset(j)?;
    let rest = d.ground.full().difference(j);
    let denom = margin(d, &rest)?;
    if denom.table.iter().any(|p| p.is_zero()) {
        return Err(LciError::Positivity(format!(
            "margin on {} has a zero entry",
            d.ground.render(&rest)
        )));
    }
    Ok(d
        .table
        .iter()
        .enumerate()
        .map(|(k, p)| p.clone() / denom.at_full(k).clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exact;
    use num_traits::Zero;
    use crate::ci::ci_statements;
    use crate::lattice::lattice_from_generators;
    use crate::tdag::{lattice_of_tdag, tdag_of_lattice};

    fn fig1_tdag() -> Tdag {
        let g = GroundSet::numbered(5);
        let gens: Vec<IndexSet> = ["123", "234", "345"].iter().map(|s| g.parse_set(s).unwrap()).collect();
        tdag_of_lattice(&lattice_from_generators(&g, &gens).unwrap())
    }

    fn set(g: &GroundSet, s: &str) -> IndexSet {
        g.parse_set(s).unwrap()
    }

    #[test]
    fn validation() {
        let g = GroundSet::numbered(1);
        assert!(DiscreteJoint::new(g.clone(), vec![2], vec![0.5, 0.5]).is_ok());
        assert!(DiscreteJoint::new(g.clone(), vec![2], vec![0.5, 0.6]).is_err());
        assert!(DiscreteJoint::new(g.clone(), vec![2], vec![1.5, -0.5]).is_err());
        assert!(DiscreteJoint::new(g.clone(), vec![3], vec![0.5, 0.5]).is_err());
        assert!(DiscreteJoint::new(g, vec![2, 2], vec![0.25; 4]).is_err());
    }

    #[test]
    fn margins_of_product() {
        let g = GroundSet::numbered(2);
        let d: DiscreteJoint<f64> = DiscreteJoint::product(g.clone(), &[vec![0.3, 0.7], vec![0.4, 0.6]]).unwrap();
        // hand-computed: p_{i+} = sum_j p_{i+} p_{+j}
        let m1 = margin(&d, &set(&g, "1")).unwrap();
        assert!((m1.table()[0] - 0.3).abs() < 1e-15 && (m1.table()[1] - 0.7).abs() < 1e-15);
        let m2 = margin(&d, &set(&g, "2")).unwrap();
        assert!((m2.table()[0] - 0.4).abs() < 1e-15);
        assert_eq!(margin(&d, &g.full()).unwrap().table(), d.table());
        assert_eq!(margin(&d, &IndexSet::new()).unwrap().table().len(), 1);
        assert!((margin(&d, &IndexSet::new()).unwrap().table()[0] - 1.0).abs() < 1e-15);
        assert!(check_ci(&d, &CiStatement::parse(&g, "1 _||_ 2").unwrap(), 1e-12).unwrap());
    }

    #[test]
    fn row_major_last_fastest() {
        let g = GroundSet::numbered(2);
        let d: DiscreteJoint<f64> = DiscreteJoint::new(g.clone(), vec![2, 3], vec![0.1, 0.2, 0.3, 0.1, 0.2, 0.1]).unwrap();
        assert_eq!(d.assignment(4), vec![1, 1]);
        let m = margin(&d, &set(&g, "1")).unwrap();
        assert!((m.table()[0] - 0.6).abs() < 1e-12);
    }

    #[test]
    fn nested_sets_are_trivial() {
        let t = fig1_tdag();
        let d: DiscreteJoint<f64> = joint_from_tdag(&t, &[3, 2, 2, 2, 2], ConditionalSource::Random(9)).unwrap();
        let g = d.ground().clone();
        assert!(check_hibi_relation(&d, &set(&g, "1"), &set(&g, "125"), 1e-12).unwrap());
    }

    #[test]
    fn tdag_joint_satisfies_model_exactly() {
        let t = fig1_tdag();
        let l = lattice_of_tdag(&t).unwrap();
        let d: DiscreteJoint<Exact> = joint_from_tdag(&t, &[2; 5], ConditionalSource::Random(1)).unwrap();
        for s in ci_statements(&l) {
            assert!(ci_deviation(&d, &s).unwrap().is_zero(), "{}", s.render(l.ground()));
        }
        for (a, b) in l.incomparable_pairs() {
            let dev = hibi_relation_deviation(&d, l.element(a), l.element(b)).unwrap();
            assert!(dev.is_zero());
        }
    }

    #[test]
    fn perturbation_breaks_independence() {
        let t = fig1_tdag();
        let d: DiscreteJoint<f64> = joint_from_tdag(&t, &[2; 5], ConditionalSource::Random(1)).unwrap();
        let g = d.ground().clone();
        let s = CiStatement::parse(&g, "12 _||_ 45 | 3").unwrap();
        assert!(check_ci(&d, &s, 1e-10).unwrap());
        let bad = d.perturbed(0, 0.01).unwrap();
        assert!(!check_ci(&bad, &s, 1e-6).unwrap());
    }

    #[test]
    fn violated_toric_relation() {
        // X3 independent of the rest; within each X3 slice p000 p110 != p010 p100
        let g = GroundSet::numbered(3);
        let slice = [0.1, 0.2, 0.3, 0.4];
        let table: Vec<f64> = (0..8).map(|k| slice[k >> 1] * 0.5).collect();
        let d = DiscreteJoint::new(g.clone(), vec![2; 3], table).unwrap();
        assert!(!check_hibi_relation(&d, &set(&g, "13"), &set(&g, "23"), 1e-9).unwrap());
    }

    #[test]
    fn uniform_and_edgeless() {
        let t = fig1_tdag();
        let d: DiscreteJoint<Exact> = joint_from_tdag(&t, &[2, 3, 2, 2, 2], ConditionalSource::Uniform).unwrap();
        assert_eq!(d, DiscreteJoint::uniform(d.ground().clone(), vec![2, 3, 2, 2, 2]).unwrap());

        let e = Tdag::new(vec!["a".into(), "b".into(), "c".into()], []).unwrap();
        let d: DiscreteJoint<f64> = joint_from_tdag(&e, &[2, 2, 2], ConditionalSource::Random(3)).unwrap();
        let g = d.ground().clone();
        let marg: Vec<Vec<f64>> = (0..3)
            .map(|v| margin(&d, &IndexSet::singleton(v)).unwrap().table().to_vec())
            .collect();
        let prod = DiscreteJoint::product(g, &marg).unwrap();
        for (x, y) in d.table().iter().zip(prod.table()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn q_margins() {
        let t = fig1_tdag();
        let d: DiscreteJoint<Exact> = joint_from_tdag(&t, &[2; 5], ConditionalSource::Random(4)).unwrap();
        let g = d.ground().clone();
        assert_eq!(q_margin(&d, &g.full()).unwrap(), d.table());
        let q12 = q_margin(&d, &set(&g, "12")).unwrap();
        let q45 = q_margin(&d, &set(&g, "45")).unwrap();
        let q1245 = q_margin(&d, &set(&g, "1245")).unwrap();
        for k in 0..d.table().len() {
            assert_eq!(q12[k].clone() * q45[k].clone(), q1245[k]);
        }
        let zero = DiscreteJoint::new(g.clone(), vec![2; 5], {
            let mut v = vec![Exact::new(1.into(), 16.into()); 32];
            for x in v.iter_mut().take(16) {
                *x = Exact::from_integer(0.into());
            }
            v
        })
        .unwrap();
        assert!(matches!(q_margin(&zero, &set(&g, "2345")), Err(LciError::Positivity(_))));
    }
}
