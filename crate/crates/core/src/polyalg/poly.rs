use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{PolyError, Scalar};

/// Variable names plus a multigrading: variable `i` has degree `degrees[i]`
/// in `Z^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    degrees: Vec<Vec<i64>>,
    rank: usize,
}

impl VarContext {
    pub fn new(names: Vec<String>, degrees: Vec<Vec<i64>>) -> Result<Arc<Self>, PolyError> {
        if names.len() != degrees.len() {
            return Err(PolyError::Context("one degree vector per variable".into()));
        }
        let rank = degrees.first().map_or(0, Vec::len);
        if degrees.iter().any(|d| d.len() != rank) {
            return Err(PolyError::Context("degree vectors of unequal length".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::Context(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(VarContext { names, degrees, rank }))
    }

    /// Build from blocks `(prefix, first index, count, degree)`.
    pub fn from_blocks(blocks: &[(&str, usize, usize, Vec<i64>)]) -> Arc<Self> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (prefix, start, count, deg) in blocks {
            for i in 0..*count {
                names.push(format!("{prefix}{}", start + i));
                degrees.push(deg.clone());
            }
        }
        VarContext::new(names, degrees).expect("block names are distinct")
    }

    /// Coordinates `y0..yn` of a single `P^n`, graded by total degree.
    pub fn y_block(n: usize) -> Arc<Self> {
        Self::from_blocks(&[("y", 0, n + 1, vec![1])])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, var: usize) -> &[i64] {
        &self.degrees[var]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector. Ordered by graded reverse lexicographic order with the
/// first variable largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables that occur.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn degree_in(&self, ctx: &VarContext) -> Vec<i64> {
        let mut d = vec![0; ctx.rank()];
        for (i, e) in self.0.iter().enumerate() {
            for (k, w) in ctx.degree(i).iter().enumerate() {
                d[k] += *e as i64 * w;
            }
        }
        d
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&o.0.len())
            .then(self.total_degree().cmp(&o.total_degree()))
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&o.0).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Result of [`Poly::multidegree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    Homogeneous(Vec<i64>),
    Inhomogeneous,
    /// The zero polynomial is homogeneous of every degree.
    Zero,
}

impl Grading {
    pub fn degree(&self) -> Option<&[i64]> {
        match self {
            Grading::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// Sparse multivariate polynomial with exact coefficients over a graded
/// variable context. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Monomial, Scalar>,
}

pub type BihomogeneousForm = Poly;

fn same_ctx(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Scalar) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn monomial(ctx: &Arc<VarContext>, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(ctx: &Arc<VarContext>, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), i), Scalar::one())
    }

    pub fn var_named(ctx: &Arc<VarContext>, name: &str) -> Result<Self, PolyError> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ctx, i))
    }

    pub fn from_terms(
        ctx: &Arc<VarContext>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            if m.exponents().len() != ctx.len() {
                return Err(PolyError::Context("monomial length differs from variable count".into()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        self.terms.pop_last()
    }

    /// `self -= c * m * g` in place.
    pub(crate) fn sub_scaled_shift(&mut self, g: &Poly, m: &Monomial, c: &Scalar) {
        for (gm, gc) in &g.terms {
            self.add_term(gm.mul(m), -(gc * c));
        }
    }

    fn check_ctx(&self, o: &Poly) -> Result<(), PolyError> {
        if same_ctx(&self.ctx, &o.ctx) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, o: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Poly) -> Result<Poly, PolyError> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &Poly) -> Result<Poly, PolyError> {
        self.check_ctx(o)?;
        let mut r = Poly::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut r = Poly::zero(&self.ctx);
        for (m, a) in &self.terms {
            r.add_term(m.clone(), a * c);
        }
        r
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        let mut r = Poly::zero(&self.ctx);
        for (m1, a) in &self.terms {
            r.add_term(m1.mul(m), a * c);
        }
        r
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(&self.ctx, Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Common degree vector of all terms under the context grading.
    pub fn multidegree(&self) -> Grading {
        let mut it = self.terms.keys().map(|m| m.degree_in(&self.ctx));
        let Some(first) = it.next() else {
            return Grading::Zero;
        };
        if it.all(|d| d == first) {
            Grading::Homogeneous(first)
        } else {
            Grading::Inhomogeneous
        }
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.ctx.len() {
            return Err(PolyError::PointLength {
                expected: self.ctx.len(),
                got: point.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(m.exponents()) {
                if *e > 0 {
                    t = &t * &x.pow(*e);
                }
            }
            acc = &acc + &t;
        }
        // A zero polynomial at a residue point is the residue zero.
        if let Some(m) = point.iter().find_map(Scalar::modulus) {
            acc = acc.reduce(m)?;
        }
        Ok(acc)
    }

    /// Ring map sending variable `i` to `images[i]` (all in one target
    /// context).
    pub fn substitute(&self, target: &Arc<VarContext>, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.ctx.len() {
            return Err(PolyError::Context("one image per variable".into()));
        }
        if images.iter().any(|p| !same_ctx(&p.ctx, target)) {
            return Err(PolyError::ContextMismatch);
        }
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (img, e) in images.iter().zip(m.exponents()) {
                if *e > 0 {
                    t = &t * &img.pow(*e);
                }
            }
            r = &r + &t;
        }
        Ok(r)
    }

    /// Move into another context by matching variable names.
    pub fn rebase(&self, target: &Arc<VarContext>) -> Result<Poly, PolyError> {
        let map: Vec<usize> = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| PolyError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, x) in m.exponents().iter().enumerate() {
                e[map[i]] = *x;
            }
            r.add_term(Monomial(e), c.clone());
        }
        Ok(r)
    }

    /// Reduce every coefficient into `F_p`.
    pub fn reduce(&self, m: super::Modulus) -> Result<Poly, PolyError> {
        let mut r = Poly::zero(&self.ctx);
        for (mono, c) in &self.terms {
            r.add_term(mono.clone(), c.reduce(m)?);
        }
        Ok(r)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        self.checked_add(o).expect("polynomials from different contexts")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self.checked_sub(o).expect("polynomials from different contexts")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.checked_mul(o).expect("polynomials from different contexts")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut r = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            r.terms.insert(m.clone(), -c);
        }
        r
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_poly(self))
    }
}
