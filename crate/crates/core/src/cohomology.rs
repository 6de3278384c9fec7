//! Section counts of line bundles.
//!
//! On the ambient product everything is exact (Künneth). On `X` the counts
//! come from the ideal-sheaf sequence `0 → O_P(D - X) → O_P(D) → O_X(D) → 0`
//! and are exact whenever the connecting maps are forced; otherwise an
//! interval is returned. The Koszul Hilbert function of the Cox
//! presentation is an independent count of the same numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cones::DivisorClass;
use crate::hypersurface::{AmbientProduct, HyperError, Hypersurface};
use crate::polyalg::VarContext;

/// Dimensions are exact integers; `i128` leaves ample headroom at desk scale.
pub type Count = i128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error("class {class} has rank {got}, expected {expected}")]
    RankMismatch {
        class: DivisorClass,
        expected: usize,
        got: usize,
    },
    #[error("grading admits no positive functional; graded pieces are infinite")]
    NotPositivelyGraded,
    #[error("{0} is not one of the basis classes H_i")]
    NotBasisClass(DivisorClass),
    #[error("h^0(L) is not determined for L = {0}")]
    UndeterminedSections(DivisorClass),
}

/// `C(m, k)` as a dimension count: zero unless `0 ≤ k ≤ m`.
pub fn binom(m: i64, k: i64) -> Count {
    if k < 0 || m < 0 || m < k {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1, |acc: Count, i| acc * (m - i) as Count / (i + 1) as Count)
}

/// `C(m, k) = m(m-1)⋯(m-k+1)/k!` as a polynomial in `m`, valid for all
/// integers `m`. Used only for Euler characteristics.
pub fn binom_poly(m: i64, k: usize) -> Count {
    (0..k as i64).fold(1, |acc: Count, i| acc * (m - i) as Count / (i + 1) as Count)
}

/// `h^i(P^N, O(a))`.
pub fn h_projective(big_n: usize, a: i64, i: usize) -> Count {
    let n = big_n as i64;
    match i {
        0 if a >= 0 => binom(a + n, n),
        _ if i == big_n && a < -n => binom(-a - 1, n),
        _ => 0,
    }
}

fn check_rank(ambient: &AmbientProduct, class: &DivisorClass) -> Result<(), CohomologyError> {
    if class.rank() != ambient.rank() {
        return Err(CohomologyError::RankMismatch {
            class: class.clone(),
            expected: ambient.rank(),
            got: class.rank(),
        });
    }
    Ok(())
}

/// `h^i` of `O(class)` on the ambient product, by Künneth. Each factor has
/// cohomology only in degree 0 or its top degree, so the sum runs over
/// subsets of factors placed in top degree.
pub fn h_product(ambient: &AmbientProduct, class: &DivisorClass, i: usize) -> Result<Count, CohomologyError> {
    check_rank(ambient, class)?;
    let dims = ambient.dims();
    let mut total = 0;
    for mask in 0u32..(1 << dims.len()) {
        let degree: usize = (0..dims.len()).filter(|k| mask & (1 << k) != 0).map(|k| dims[k]).sum();
        if degree != i {
            continue;
        }
        total += (0..dims.len())
            .map(|k| {
                let top = mask & (1 << k) != 0;
                h_projective(dims[k], class[k], if top { dims[k] } else { 0 })
            })
            .product::<Count>();
    }
    Ok(total)
}

/// `χ(O_P(class))` on the ambient product.
pub fn euler_char_product(ambient: &AmbientProduct, class: &DivisorClass) -> Result<Count, CohomologyError> {
    check_rank(ambient, class)?;
    Ok(ambient
        .dims()
        .iter()
        .zip(class.coords())
        .map(|(&n, &a)| binom_poly(a + n as i64, n))
        .product())
}

/// `χ(O_X(class)) = χ_P(class) - χ_P(class - X)`.
pub fn euler_char_x(x: &Hypersurface, class: &DivisorClass) -> Result<Count, CohomologyError> {
    let amb = x.ambient();
    Ok(euler_char_product(amb, class)? - euler_char_product(amb, &(class - x.multidegree()))?)
}

/// A dimension that is either known or bracketed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CohomologyValue {
    Exact(Count),
    Interval { lo: Count, hi: Count },
}

impl CohomologyValue {
    fn new(lo: Count, hi: Count) -> Self {
        if lo == hi {
            CohomologyValue::Exact(lo)
        } else {
            CohomologyValue::Interval { lo, hi }
        }
    }

    pub fn exact(self) -> Option<Count> {
        match self {
            CohomologyValue::Exact(v) => Some(v),
            CohomologyValue::Interval { .. } => None,
        }
    }

    pub fn lo(self) -> Count {
        match self {
            CohomologyValue::Exact(v) => v,
            CohomologyValue::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(self) -> Count {
        match self {
            CohomologyValue::Exact(v) => v,
            CohomologyValue::Interval { hi, .. } => hi,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, CohomologyValue::Exact(_))
    }
}

impl fmt::Display for CohomologyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyValue::Exact(v) => write!(f, "{v}"),
            CohomologyValue::Interval { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

/// Bounds on the rank of a map `k^src → k^dst` about which nothing is known
/// except the dimensions, returned as `(coker, ker)` ranges.
fn unknown_map(src: Count, dst: Count, injective: bool) -> ((Count, Count), (Count, Count)) {
    if src == 0 || dst == 0 {
        return ((dst, dst), (src, src));
    }
    if injective {
        return ((dst - src, dst - src), (0, 0));
    }
    // rank r ranges over 0..=min(src, dst)
    let r = src.min(dst);
    ((dst - r, dst), (src - r, src))
}

/// `h^i(X, O_X(class))` from the long exact sequence of
/// `0 → O_P(D - X) → O_P(D) → O_X(D) → 0`:
/// `h^i_X = dim coker(H^i_P(D-X) → H^i_P(D)) + dim ker(H^{i+1}_P(D-X) → H^{i+1}_P(D))`.
/// In degree 0 the map is multiplication by `f`, hence injective.
pub fn h_x(x: &Hypersurface, class: &DivisorClass, i: usize) -> Result<CohomologyValue, CohomologyError> {
    let amb = x.ambient();
    check_rank(amb, class)?;
    if i > x.dim() {
        return Ok(CohomologyValue::Exact(0));
    }
    let minus = class - x.multidegree();
    let (coker, _) = unknown_map(h_product(amb, &minus, i)?, h_product(amb, class, i)?, i == 0);
    let (_, ker) = unknown_map(h_product(amb, &minus, i + 1)?, h_product(amb, class, i + 1)?, false);
    Ok(CohomologyValue::new(coker.0 + ker.0, coker.1 + ker.1))
}

/// `h^0(X, O_X(class))`.
pub fn h0_x(x: &Hypersurface, class: &DivisorClass) -> Result<CohomologyValue, CohomologyError> {
    h_x(x, class, 0)
}

/// All `h^i(X, O_X(D))` for a set of classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    entries: BTreeMap<(usize, DivisorClass), CohomologyValue>,
    dim: usize,
}

impl CohomologyTable {
    pub fn compute(x: &Hypersurface, classes: &[DivisorClass]) -> Result<Self, CohomologyError> {
        let mut entries = BTreeMap::new();
        for c in classes {
            for i in 0..=x.dim() {
                entries.insert((i, c.clone()), h_x(x, c, i)?);
            }
        }
        Ok(CohomologyTable { entries, dim: x.dim() })
    }

    /// Zero outside `0..=dim`.
    pub fn get(&self, i: usize, class: &DivisorClass) -> Option<CohomologyValue> {
        if i > self.dim {
            return Some(CohomologyValue::Exact(0));
        }
        self.entries.get(&(i, class.clone())).copied()
    }

    /// `Σ (-1)^i h^i` when every entry for the class is exact.
    pub fn alternating_sum(&self, class: &DivisorClass) -> Option<Count> {
        (0..=self.dim).try_fold(0, |acc, i| {
            let v = self.get(i, class)?.exact()?;
            Some(if i % 2 == 0 { acc + v } else { acc - v })
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, DivisorClass), &CohomologyValue)> {
        self.entries.iter()
    }
}

/// A block of polynomial variables sharing one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableBlock {
    pub prefix: String,
    pub start: usize,
    pub count: usize,
    pub degree: DivisorClass,
}

/// Which presentation a [`CoxPresentation`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoxFamily {
    /// `k[x, y, z]/(d+1 relations of degree (0,e))` for `X ⊂ P¹ × Pⁿ`.
    P1Family { n: usize, d: usize, e: usize },
    /// `k[x_0..x_m, y_0..y_n]/(f)`.
    TwoFactor { m: usize, n: usize, d: usize, e: usize },
}

/// Generator blocks and relation degrees of a Cox ring presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxPresentation {
    pub family: CoxFamily,
    pub blocks: Vec<VariableBlock>,
    pub relation_degrees: Vec<DivisorClass>,
}

fn block(prefix: &str, start: usize, count: usize, degree: [i64; 2]) -> VariableBlock {
    VariableBlock {
        prefix: prefix.into(),
        start,
        count,
        degree: DivisorClass::new(degree.to_vec()),
    }
}

impl CoxPresentation {
    pub fn p1_family(n: usize, d: usize, e: usize) -> Self {
        CoxPresentation {
            family: CoxFamily::P1Family { n, d, e },
            blocks: vec![
                block("x", 0, 2, [1, 0]),
                block("y", 0, n + 1, [0, 1]),
                block("z", 1, d, [-1, e as i64]),
            ],
            relation_degrees: vec![DivisorClass::new(vec![0, e as i64]); d + 1],
        }
    }

    pub fn two_factor(m: usize, n: usize, d: usize, e: usize) -> Self {
        CoxPresentation {
            family: CoxFamily::TwoFactor { m, n, d, e },
            blocks: vec![block("x", 0, m + 1, [1, 0]), block("y", 0, n + 1, [0, 1])],
            relation_degrees: vec![DivisorClass::new(vec![d as i64, e as i64])],
        }
    }

    pub fn generator_count(&self) -> usize {
        self.blocks.iter().map(|b| b.count).sum()
    }

    pub fn relation_count(&self) -> usize {
        self.relation_degrees.len()
    }

    /// One degree per generator, in variable order.
    pub fn generator_degrees(&self) -> Vec<DivisorClass> {
        self.blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.degree.clone(), b.count))
            .collect()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.blocks
            .iter()
            .flat_map(|b| (b.start..b.start + b.count).map(move |i| format!("{}{i}", b.prefix)))
            .collect()
    }

    pub fn context(&self) -> Arc<VarContext> {
        let blocks: Vec<(&str, usize, usize, Vec<i64>)> = self
            .blocks
            .iter()
            .map(|b| (b.prefix.as_str(), b.start, b.count, b.degree.coords().to_vec()))
            .collect();
        VarContext::from_blocks(&blocks)
    }

    /// Krull dimension of the polynomial ring modulo a complete intersection
    /// of the stated relations.
    pub fn expected_krull_dimension(&self) -> usize {
        self.generator_count() - self.relation_count()
    }

    /// An integer functional positive on every generator degree, if any.
    pub fn positive_functional(&self) -> Option<Vec<i64>> {
        let r = self.blocks.first()?.degree.rank();
        let degs: Vec<&DivisorClass> = self.blocks.iter().map(|b| &b.degree).collect();
        // search by increasing sup-norm
        for bound in 1..=32i64 {
            let mut w = vec![-bound; r];
            loop {
                if w.iter().any(|c| c.abs() == bound)
                    && degs
                        .iter()
                        .all(|d| d.coords().iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() > 0)
                {
                    return Some(w);
                }
                let mut k = 0;
                while k < r && w[k] == bound {
                    w[k] = -bound;
                    k += 1;
                }
                if k == r {
                    break;
                }
                w[k] += 1;
            }
        }
        None
    }

    /// Number of monomials of the given degree in the generators.
    pub fn graded_piece_dim(&self, class: &DivisorClass) -> Result<Count, CohomologyError> {
        let w = self.positive_functional().ok_or(CohomologyError::NotPositivelyGraded)?;
        let weight = |c: &DivisorClass| c.coords().iter().zip(&w).map(|(a, b)| a * b).sum::<i64>();
        let blocks: Vec<(DivisorClass, usize, i64)> = self
            .blocks
            .iter()
            .filter(|b| b.count > 0)
            .map(|b| (b.degree.clone(), b.count, weight(&b.degree)))
            .collect();
        fn go(blocks: &[(DivisorClass, usize, i64)], rest: &DivisorClass, rest_w: i64) -> Count {
            let Some(((deg, count, w), tail)) = blocks.split_first() else {
                return Count::from(rest.is_zero());
            };
            (0..=rest_w / w)
                .map(|k| {
                    let ways = binom(k + *count as i64 - 1, *count as i64 - 1);
                    if ways == 0 {
                        return 0;
                    }
                    ways * go(tail, &(rest - &(k * deg)), rest_w - k * w)
                })
                .sum()
        }
        let total = weight(class);
        if total < 0 {
            return Ok(0);
        }
        Ok(go(&blocks, class, total))
    }
}

/// Hilbert function of the Cox presentation modulo a regular sequence of
/// relations: `Σ_S (-1)^|S| dim S_{D - deg S}` over subsets of relations.
pub fn koszul_hilbert(p: &CoxPresentation, class: &DivisorClass) -> Result<Count, CohomologyError> {
    let mut shifts: BTreeMap<DivisorClass, Count> = BTreeMap::from([(class.clone(), 1)]);
    for r in &p.relation_degrees {
        let mut next = shifts.clone();
        for (s, c) in &shifts {
            *next.entry(s - r).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        shifts = next;
    }
    shifts
        .iter()
        .try_fold(0, |acc, (s, c)| Ok(acc + c * p.graded_piece_dim(s)?))
}

/// Closed form of `dim S_{(a,b)}` for the `P¹ × Pⁿ` presentation:
/// `Σ_{g ≥ max(0,-a), eg ≤ b} (a+g+1) C(b-eg+n, n) C(g+d-1, d-1)`, where `g`
/// is the total z-degree.
pub fn graded_piece_closed_form(n: usize, d: usize, e: usize, a: i64, b: i64) -> Count {
    let (n, d, e) = (n as i64, d as i64, e as i64);
    if d == 0 {
        return if a >= 0 && b >= 0 {
            (a + 1) as Count * binom(b + n, n)
        } else {
            0
        };
    }
    let mut total = 0;
    let mut g = (-a).max(0);
    while e * g <= b {
        total += (a + g + 1) as Count * binom(b - e * g + n, n) * binom(g + d - 1, d - 1);
        g += 1;
    }
    total
}

/// Outcome of [`vanishing_check_mumford`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MumfordVerdict {
    /// All required groups vanish.
    Certified,
    /// `H^i(X, class) ≠ 0` for a required pair.
    Fails { i: usize, class: DivisorClass },
    /// Some required group is only bracketed, or `D` has no sections.
    CannotCertify { reason: String },
}

impl MumfordVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, MumfordVerdict::Certified)
    }
}

/// Checks the hypotheses `H^i(X, D - iL) = H^i(X, D - (i+1)L) = 0` of the
/// multiplication lemma for a basis class `L`, over
/// `1 ≤ i ≤ min(h^0(L) - 1, dim X - 1)`.
pub fn vanishing_check_mumford(
    x: &Hypersurface,
    d: &DivisorClass,
    l: &DivisorClass,
) -> Result<MumfordVerdict, CohomologyError> {
    let amb = x.ambient();
    check_rank(amb, d)?;
    check_rank(amb, l)?;
    let is_basis = l.coords().iter().filter(|&&c| c == 1).count() == 1 && l.coords().iter().all(|&c| c == 0 || c == 1);
    if !is_basis {
        return Err(CohomologyError::NotBasisClass(l.clone()));
    }
    let h0_l = h0_x(x, l)?
        .exact()
        .ok_or_else(|| CohomologyError::UndeterminedSections(l.clone()))?;
    if h0_x(x, d)?.hi() == 0 {
        return Ok(MumfordVerdict::CannotCertify {
            reason: format!("{d} has no sections"),
        });
    }
    let top = (h0_l - 1).min(x.dim() as Count - 1).max(0) as usize;
    let mut uncertain = None;
    for i in 1..=top {
        for k in [i as i64, i as i64 + 1] {
            let class = d - &(k * l);
            let v = h_x(x, &class, i)?;
            if v.lo() > 0 {
                return Ok(MumfordVerdict::Fails { i, class });
            }
            if v.hi() > 0 && uncertain.is_none() {
                uncertain = Some(format!("h^{i}(X, {class}) is only known to lie in {v}"));
            }
        }
    }
    Ok(match uncertain {
        Some(reason) => MumfordVerdict::CannotCertify { reason },
        None => MumfordVerdict::Certified,
    })
}
