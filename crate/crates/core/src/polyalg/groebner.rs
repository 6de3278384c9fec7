//! Buchberger's algorithm under graded reverse lexicographic order, with hard
//! resource caps, plus the leading-term dimension count used for codimension.

use std::sync::Arc;

use super::{Monomial, Poly, PolyError, VarContext};

/// Environment variable overriding [`Budget::default`]. Accepts either a bare
/// pair count (`"5000"`) or `pairs=N,degree=D` in any order.
pub const BUDGET_ENV: &str = "COXCONES_BUDGET";

/// Most variables the leading-term dimension count will enumerate.
pub const MAX_STAIRCASE_VARS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// S-polynomials that may be formed and reduced.
    pub max_pairs: usize,
    /// Largest total degree of any basis element.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 100_000,
            max_degree: 24,
        }
    }
}

impl Budget {
    pub fn parse(s: &str) -> Result<Budget, PolyError> {
        let mut b = Budget::default();
        let bad = || PolyError::Parse(format!("bad budget `{s}`"));
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                None => b.max_pairs = part.parse().map_err(|_| bad())?,
                Some(("pairs", v)) => b.max_pairs = v.trim().parse().map_err(|_| bad())?,
                Some(("degree", v)) => b.max_degree = v.trim().parse().map_err(|_| bad())?,
                Some(_) => return Err(bad()),
            }
        }
        Ok(b)
    }

    /// Default budget, overridden by `COXCONES_BUDGET` when set.
    pub fn from_env() -> Result<Budget, PolyError> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Budget::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }
}

/// Only graded reverse lexicographic order is implemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
}

/// Generators of an ideal in one variable context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ctx: Arc<VarContext>,
    gens: Vec<Poly>,
    order: MonomialOrder,
}

impl IdealBasis {
    /// Zero generators are dropped.
    pub fn new(ctx: &Arc<VarContext>, gens: Vec<Poly>) -> Result<Self, PolyError> {
        if gens.iter().any(|g| g.ctx() != ctx) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(IdealBasis {
            ctx: ctx.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            order: MonomialOrder::Grevlex,
        })
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.total_degree() == Some(0))
    }
}

/// Full reduction of `p` by `basis` (all monic, nonzero).
pub fn normal_form(p: &Poly, basis: &[Poly]) -> Poly {
    let mut rest = p.clone();
    let mut out = Poly::zero(p.ctx());
    while let Some((m, c)) = rest.pop_leading() {
        match basis.iter().find(|g| g.leading_monomial().unwrap().divides(&m)) {
            Some(g) => {
                let (gm, _) = g.leading_term().unwrap();
                let shift = gm.quotient(&m);
                // leading term already popped; subtract the tail only
                let mut tail = g.clone();
                tail.pop_leading();
                rest.sub_scaled_shift(&tail, &shift, &c);
            }
            None => out.add_term(m, c),
        }
    }
    out
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, _) = f.leading_term().unwrap();
    let (gm, _) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let one = super::Scalar::one();
    let a = f.mul_term(&fm.quotient(&l), &one);
    let b = g.mul_term(&gm.quotient(&l), &one);
    &a - &b
}

/// Reduced Gröbner basis under grevlex.
///
/// Fails with [`PolyError::BudgetExceeded`] rather than returning a partial
/// basis.
pub fn groebner_basis(ideal: &IdealBasis, budget: &Budget) -> Result<IdealBasis, PolyError> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in &ideal.gens {
        check_degree(g, budget)?;
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| pair_lcm(&basis, **a).cmp(&pair_lcm(&basis, **b)))
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        let (mi, mj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if mi.coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > budget.max_pairs {
            return Err(PolyError::BudgetExceeded(format!(
                "more than {} S-pairs",
                budget.max_pairs
            )));
        }
        let r = normal_form(&s_poly(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        check_degree(&r, budget)?;
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.push((k, n));
        }
    }
    Ok(IdealBasis {
        ctx: ideal.ctx.clone(),
        gens: interreduce(basis),
        order: MonomialOrder::Grevlex,
    })
}

fn pair_lcm(basis: &[Poly], (i, j): (usize, usize)) -> Monomial {
    basis[i]
        .leading_monomial()
        .unwrap()
        .lcm(basis[j].leading_monomial().unwrap())
}

fn check_degree(p: &Poly, budget: &Budget) -> Result<(), PolyError> {
    match p.total_degree() {
        Some(d) if d > budget.max_degree => Err(PolyError::BudgetExceeded(format!(
            "basis element of degree {d} exceeds {}",
            budget.max_degree
        ))),
        _ => Ok(()),
    }
}

fn interreduce(mut basis: Vec<Poly>) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Poly> = Vec::new();
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for p in basis {
        let lm = p.leading_monomial().unwrap();
        if !keep.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            keep.push(p);
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let (lm, lc) = keep[i].leading_term().unwrap();
        let mut tail = keep[i].clone();
        tail.pop_leading();
        let mut r = normal_form(&tail, &others);
        r.add_term(lm.clone(), lc.clone());
        out.push(r.monic());
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}

/// Whether `p` lies in the ideal spanned by a Gröbner basis.
pub fn is_member(p: &Poly, gb: &IdealBasis) -> bool {
    normal_form(p, &gb.gens).is_zero()
}

/// Krull dimension of `k[vars]/(monomials)`: the largest set of variables
/// containing the support of none of the given monomials.
pub fn staircase_dimension(leading: &[Monomial], nvars: usize) -> Result<usize, PolyError> {
    if nvars > MAX_STAIRCASE_VARS {
        return Err(PolyError::BudgetExceeded(format!(
            "{nvars} variables exceed the dimension-count cap of {MAX_STAIRCASE_VARS}"
        )));
    }
    let masks: Vec<u64> = leading.iter().map(Monomial::support_mask).collect();
    let mut best = 0;
    for set in 0u64..(1 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && masks.iter().all(|m| m & !set != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Codimension of an ideal: variable count minus the dimension of the
/// leading-term staircase. The unit ideal has codimension `nvars + 1`.
pub fn ideal_codim(ideal: &IdealBasis, budget: &Budget) -> Result<usize, PolyError> {
    let nvars = ideal.ctx.len();
    if ideal.gens.is_empty() {
        return Ok(0);
    }
    let gb = groebner_basis(ideal, budget)?;
    if gb.is_unit() {
        return Ok(nvars + 1);
    }
    let lead: Vec<Monomial> = gb.gens.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
    Ok(nvars - staircase_dimension(&lead, nvars)?)
}

/// Outcome of [`is_regular_sequence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    /// The first `prefix` forms have codimension below `prefix`.
    DropsAt {
        prefix: usize,
        codim: usize,
    },
    /// More forms than variables can never be regular.
    TooManyForms {
        forms: usize,
        vars: usize,
    },
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular)
    }
}

/// Homogeneous forms are a regular sequence iff every prefix of length `i`
/// cuts out an ideal of codimension `i`.
pub fn is_regular_sequence(forms: &[Poly], budget: &Budget) -> Result<Regularity, PolyError> {
    let Some(first) = forms.first() else {
        return Ok(Regularity::Regular);
    };
    let ctx = first.ctx().clone();
    if forms.len() > ctx.len() {
        return Ok(Regularity::TooManyForms {
            forms: forms.len(),
            vars: ctx.len(),
        });
    }
    for f in forms {
        if f.ctx() != &ctx {
            return Err(PolyError::ContextMismatch);
        }
        if f.is_zero() {
            return Ok(Regularity::DropsAt { prefix: 1, codim: 0 });
        }
        let deg = f.total_degree();
        if f.terms().any(|(m, _)| Some(m.total_degree()) != deg) {
            return Err(PolyError::NotHomogeneous);
        }
    }
    for i in 1..=forms.len() {
        let codim = ideal_codim(&IdealBasis::new(&ctx, forms[..i].to_vec())?, budget)?;
        if codim != i {
            return Ok(Regularity::DropsAt { prefix: i, codim });
        }
    }
    Ok(Regularity::Regular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, Modulus, Scalar};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn y(n: usize) -> Arc<VarContext> {
        VarContext::y_block(n)
    }

    fn ideal(c: &Arc<VarContext>, gens: &[&str]) -> IdealBasis {
        IdealBasis::new(c, gens.iter().map(|g| parse_poly(c, g).unwrap()).collect()).unwrap()
    }

    /// Every generator reduces to zero and every S-polynomial of the output
    /// reduces to zero.
    fn assert_groebner(input: &IdealBasis, gb: &IdealBasis) {
        for g in input.gens() {
            assert!(is_member(g, gb), "{g} not reduced to 0");
        }
        let b = gb.gens();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                assert!(normal_form(&s_poly(&b[i], &b[j]), b).is_zero());
            }
        }
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let c = y(1);
        let i = ideal(&c, &["y0", "y1"]);
        let gb = groebner_basis(&i, &Budget::default()).unwrap();
        // sorted ascending, and y1 < y0
        assert_eq!(gb.gens(), &[i.gens()[1].clone(), i.gens()[0].clone()]);
    }

    #[test]
    fn containment_forced() {
        let c = y(1);
        let i = ideal(&c, &["y0^2 - y1^2", "y0 - y1"]);
        let gb = groebner_basis(&i, &Budget::default()).unwrap();
        assert_eq!(gb.gens(), &[parse_poly(&c, "y0 - y1").unwrap()]);
        assert!(is_member(&parse_poly(&c, "y0^2 - y1^2").unwrap(), &gb));
        assert!(!is_member(&parse_poly(&c, "y0").unwrap(), &gb));
    }

    #[test]
    fn koszul_pair_membership() {
        let c = y(2);
        let i = ideal(&c, &["y0*y1", "y0*y2"]);
        let gb = groebner_basis(&i, &Budget::default()).unwrap();
        assert_groebner(&i, &gb);
        assert!(is_member(&parse_poly(&c, "y0*y1*y2").unwrap(), &gb));
        assert!(!is_member(&parse_poly(&c, "y1*y2").unwrap(), &gb));
    }

    #[test]
    fn nontrivial_basis_over_q() {
        let c = y(2);
        let i = ideal(&c, &["y0^2 - y1*y2", "y0*y1 - y2^2", "y1^2 - 2*y0*y2"]);
        let gb = groebner_basis(&i, &Budget::default()).unwrap();
        assert_groebner(&i, &gb);
    }

    #[test]
    fn codimension_examples() {
        let c = y(3);
        assert_eq!(
            ideal_codim(&ideal(&c, &["y0", "y1", "y2"]), &Budget::default()).unwrap(),
            3
        );
        assert_eq!(
            ideal_codim(&IdealBasis::new(&c, vec![]).unwrap(), &Budget::default()).unwrap(),
            0
        );
        assert_eq!(
            ideal_codim(&ideal(&c, &["y0*y1", "y0*y2"]), &Budget::default()).unwrap(),
            1
        );
        assert_eq!(
            ideal_codim(&ideal(&c, &["y0 - 1", "y0"]), &Budget::default()).unwrap(),
            5
        );
    }

    #[test]
    fn regular_sequences() {
        let c = y(3);
        let pure = ideal(&c, &["y0^2", "y1^2", "y2^2"]);
        assert!(is_regular_sequence(pure.gens(), &Budget::default())
            .unwrap()
            .is_regular());
        let bad = ideal(&c, &["y0", "y0*y1"]);
        assert_eq!(
            is_regular_sequence(bad.gens(), &Budget::default()).unwrap(),
            Regularity::DropsAt { prefix: 2, codim: 1 }
        );
        let c1 = y(1);
        let many = ideal(&c1, &["y0", "y1", "y0 + y1"]);
        assert!(matches!(
            is_regular_sequence(many.gens(), &Budget::default()).unwrap(),
            Regularity::TooManyForms { forms: 3, vars: 2 }
        ));
        let inhom = ideal(&c1, &["y0^2 + y1"]);
        assert_eq!(
            is_regular_sequence(inhom.gens(), &Budget::default()),
            Err(PolyError::NotHomogeneous)
        );
    }

    #[test]
    fn random_dense_quadrics_are_regular() {
        let c = y(3);
        let m = Modulus::default();
        let quad: Vec<Monomial> = (0..4)
            .flat_map(|i| (i..4).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut e = vec![0; 4];
                e[i] += 1;
                e[j] += 1;
                Monomial::new(e)
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let forms: Vec<Poly> = (0..3)
                .map(|_| {
                    Poly::from_terms(
                        &c,
                        quad.iter()
                            .map(|q| (q.clone(), m.elem(rng.gen_range(0..m.get() as i64)))),
                    )
                    .unwrap()
                })
                .collect();
            assert!(is_regular_sequence(&forms, &Budget::default()).unwrap().is_regular());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let c = y(2);
        let i = ideal(&c, &["y0^2 - y1*y2", "y0*y1 - y2^2", "y1^2 - 2*y0*y2"]);
        let tight = Budget {
            max_pairs: 1,
            max_degree: 24,
        };
        assert!(matches!(groebner_basis(&i, &tight), Err(PolyError::BudgetExceeded(_))));
        let low_degree = Budget {
            max_pairs: 100,
            max_degree: 1,
        };
        assert!(matches!(
            groebner_basis(&i, &low_degree),
            Err(PolyError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn budget_parsing() {
        assert_eq!(Budget::parse("50").unwrap().max_pairs, 50);
        let b = Budget::parse("degree=8, pairs=9").unwrap();
        assert_eq!((b.max_pairs, b.max_degree), (9, 8));
        assert!(Budget::parse("depth=3").is_err());
    }

    #[test]
    fn constants_are_units() {
        let c = y(1);
        let i = IdealBasis::new(&c, vec![Poly::constant(&c, Scalar::int(3))]).unwrap();
        assert!(groebner_basis(&i, &Budget::default()).unwrap().is_unit());
    }
}
