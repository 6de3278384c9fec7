//! Hypersurfaces in products of projective spaces.
//!
//! For `X ⊂ P¹ × Pⁿ` of bidegree `(d, e)` the form is split into x-slices
//! `f = Σ x0^(d-i) x1^i f_i`, which drive the companion matrix `A`, the
//! matrix `B` over the variables of the flipped side, and the flip itself.
//!
//! Sign convention: `det A = f` exactly, for every `d`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cones::{ConeError, DivisorClass, LatticeMap};
use crate::polyalg::{
    nullspace, parse_poly, rank, solve, IdealBasis, Modulus, Monomial, Poly, PolyError, PolyMatrix, Scalar, VarContext,
};

/// Variable prefixes of the ambient factors, in order.
pub const FACTOR_PREFIXES: [&str; 7] = ["x", "y", "u", "v", "w", "s", "t"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HyperError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),
    #[error("invalid multidegree: {0}")]
    InvalidMultidegree(String),
    #[error("form has degree {got}, expected {expected}")]
    WrongDegree { expected: String, got: String },
    #[error("operation needs an ambient P^1 x P^n")]
    NotP1Family,
    #[error("x-slices are not available")]
    SlicesAbsent,
    #[error("point is not on X")]
    NotOnX,
    #[error("point is in the indeterminacy locus: {0}")]
    Indeterminate(String),
    #[error("kernel of B has dimension {0}, expected 1")]
    Nullity(usize),
    #[error("expected {expected} classes, got {got}")]
    ClassCount { expected: usize, got: usize },
    #[error("integer overflow in intersection product")]
    Overflow,
    #[error("factor {factor} carries degree {degree}; a double cover needs a P^1 factor of degree 2")]
    NotDoubleCover { factor: usize, degree: i64 },
    #[error("bad point: {0}")]
    BadPoint(String),
}

/// `P^{n_1} × … × P^{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AmbientProduct {
    dims: Vec<usize>,
}

impl AmbientProduct {
    pub fn new(dims: Vec<usize>) -> Result<Self, HyperError> {
        if dims.is_empty() || dims.len() > FACTOR_PREFIXES.len() {
            return Err(HyperError::InvalidAmbient(format!(
                "between 1 and {} factors required",
                FACTOR_PREFIXES.len()
            )));
        }
        if dims.contains(&0) {
            return Err(HyperError::InvalidAmbient("factor dimensions must be positive".into()));
        }
        Ok(AmbientProduct { dims })
    }

    /// `P¹ × Pⁿ`.
    pub fn p1_pn(n: usize) -> Self {
        AmbientProduct { dims: vec![1, n] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Picard rank of the ambient.
    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `Some(n)` when the ambient is `P¹ × Pⁿ`.
    pub fn p1_factor(&self) -> Option<usize> {
        match self.dims.as_slice() {
            [1, n] => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for AmbientProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| format!("P^{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Coordinate ring variables of the ambient: factor `k` contributes
/// `{prefix}0..{prefix}{n_k}` of degree `H_{k+1}`.
pub fn ambient_context(ambient: &AmbientProduct) -> Arc<VarContext> {
    let r = ambient.rank();
    let blocks: Vec<(&str, usize, usize, Vec<i64>)> = ambient
        .dims
        .iter()
        .enumerate()
        .map(|(k, n)| {
            (
                FACTOR_PREFIXES[k],
                0,
                n + 1,
                DivisorClass::basis(r, k).coords().to_vec(),
            )
        })
        .collect();
    VarContext::from_blocks(&blocks)
}

/// The y-variables of `Pⁿ` alone, graded by `(0,1)`.
pub fn y_context(n: usize) -> Arc<VarContext> {
    VarContext::from_blocks(&[("y", 0, n + 1, vec![0, 1])])
}

/// Variables of the Cox presentation: x `(1,0)`, y `(0,1)`, `z1..zd` `(-1,e)`.
pub fn cox_context(n: usize, e: usize, d: usize) -> Arc<VarContext> {
    VarContext::from_blocks(&[
        ("x", 0, 2, vec![1, 0]),
        ("y", 0, n + 1, vec![0, 1]),
        ("z", 1, d, vec![-1, e as i64]),
    ])
}

/// A hypersurface, known by its multidegree and optionally an explicit form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    ambient: AmbientProduct,
    multidegree: DivisorClass,
    form: Option<Poly>,
    slices: Option<Vec<Poly>>,
}

/// JSON description: `{"factors":[1,3],"multidegree":[2,2],"f":"..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceSpec {
    pub factors: Vec<usize>,
    pub multidegree: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
}

fn check_multidegree(ambient: &AmbientProduct, md: &DivisorClass) -> Result<(), HyperError> {
    if md.rank() != ambient.rank() {
        return Err(HyperError::InvalidMultidegree(format!(
            "{} entries for {} factors",
            md.rank(),
            ambient.rank()
        )));
    }
    if md.coords().iter().any(|&c| c < 1) {
        return Err(HyperError::InvalidMultidegree(format!("{md} has an entry below 1")));
    }
    Ok(())
}

impl Hypersurface {
    /// A hypersurface known only by its degree.
    pub fn new(ambient: AmbientProduct, multidegree: DivisorClass) -> Result<Self, HyperError> {
        check_multidegree(&ambient, &multidegree)?;
        Ok(Hypersurface {
            ambient,
            multidegree,
            form: None,
            slices: None,
        })
    }

    /// A hypersurface with an explicit form in [`ambient_context`] variables.
    pub fn with_form(ambient: AmbientProduct, multidegree: DivisorClass, f: Poly) -> Result<Self, HyperError> {
        check_multidegree(&ambient, &multidegree)?;
        let ctx = ambient_context(&ambient);
        let f = f.rebase(&ctx)?;
        match f.multidegree().degree() {
            Some(deg) if deg == multidegree.coords() => {}
            _ => {
                return Err(HyperError::WrongDegree {
                    expected: multidegree.to_string(),
                    got: format!("{:?}", f.multidegree()),
                })
            }
        }
        let slices = match ambient.p1_factor() {
            Some(_) => Some(decompose_x(&f, multidegree[0] as usize)?),
            None => None,
        };
        Ok(Hypersurface {
            ambient,
            multidegree,
            form: Some(f),
            slices,
        })
    }

    /// `X ⊂ P¹ × Pⁿ` from slices `f_0..f_d`, each a form of degree `e` in
    /// [`y_context`] variables (zero slices allowed).
    pub fn from_slices(n: usize, e: usize, slices: Vec<Poly>) -> Result<Self, HyperError> {
        if slices.is_empty() {
            return Err(HyperError::SlicesAbsent);
        }
        let yc = y_context(n);
        let slices: Vec<Poly> = slices.iter().map(|s| s.rebase(&yc)).collect::<Result<_, _>>()?;
        for s in &slices {
            if let Some(deg) = s.multidegree().degree() {
                if deg != [0, e as i64] {
                    return Err(HyperError::WrongDegree {
                        expected: format!("(0,{e})"),
                        got: format!("{deg:?}"),
                    });
                }
            } else if !s.is_zero() {
                return Err(HyperError::WrongDegree {
                    expected: format!("(0,{e})"),
                    got: "inhomogeneous".into(),
                });
            }
        }
        let d = slices.len() - 1;
        let ambient = AmbientProduct::p1_pn(n);
        let multidegree = DivisorClass::new(vec![d as i64, e as i64]);
        check_multidegree(&ambient, &multidegree)?;
        let f = assemble(&ambient_context(&ambient), &slices)?;
        Ok(Hypersurface {
            ambient,
            multidegree,
            form: Some(f),
            slices: Some(slices),
        })
    }

    /// Fixture slices: `f_i = y_i^e` while `i ≤ n`, then
    /// `y_j^(e-1) y_(j+1)` with indices taken mod `n+1`.
    pub fn fixture(d: usize, e: usize, n: usize) -> Result<Self, HyperError> {
        let yc = y_context(n);
        let slices: Vec<Poly> = (0..=d)
            .map(|i| {
                let mut exps = vec![0u32; n + 1];
                if i <= n {
                    exps[i] = e as u32;
                } else {
                    exps[i % (n + 1)] += e as u32 - 1;
                    exps[(i + 1) % (n + 1)] += 1;
                }
                Poly::monomial(&yc, Monomial::new(exps), Scalar::one())
            })
            .collect();
        Hypersurface::from_slices(n, e, slices)
    }

    /// Dense random slices. Coefficients are drawn in `[-bound, bound]` over
    /// `Q`, or uniformly in `F_p` when a modulus is given.
    pub fn random<R: Rng>(
        d: usize,
        e: usize,
        n: usize,
        rng: &mut R,
        bound: i64,
        modulus: Option<Modulus>,
    ) -> Result<Self, HyperError> {
        let yc = y_context(n);
        let monos = monomials_of_degree(n + 1, e as u32);
        let slices: Vec<Poly> = (0..=d)
            .map(|_| {
                let terms = monos.iter().map(|m| {
                    let c = match modulus {
                        Some(p) => p.elem(rng.gen_range(0..p.get() as i64)),
                        None => Scalar::int(rng.gen_range(-bound..=bound)),
                    };
                    (m.clone(), c)
                });
                Poly::from_terms(&yc, terms).expect("one context")
            })
            .collect();
        Hypersurface::from_slices(n, e, slices)
    }

    pub fn from_spec(spec: &HypersurfaceSpec) -> Result<Self, HyperError> {
        let ambient = AmbientProduct::new(spec.factors.clone())?;
        let md = DivisorClass::new(spec.multidegree.clone());
        match &spec.f {
            Some(text) => {
                let f = parse_poly(&ambient_context(&ambient), text)?;
                Hypersurface::with_form(ambient, md, f)
            }
            None => Hypersurface::new(ambient, md),
        }
    }

    pub fn to_spec(&self) -> HypersurfaceSpec {
        HypersurfaceSpec {
            factors: self.ambient.dims.clone(),
            multidegree: self.multidegree.coords().to_vec(),
            f: self.form.as_ref().map(Poly::to_string),
        }
    }

    pub fn ambient(&self) -> &AmbientProduct {
        &self.ambient
    }

    pub fn multidegree(&self) -> &DivisorClass {
        &self.multidegree
    }

    pub fn form(&self) -> Option<&Poly> {
        self.form.as_ref()
    }

    pub fn slices(&self) -> Option<&[Poly]> {
        self.slices.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim() - 1
    }

    /// `(n, d, e)` when the ambient is `P¹ × Pⁿ`.
    pub fn p1_family(&self) -> Option<(usize, usize, usize)> {
        let n = self.ambient.p1_factor()?;
        Some((n, self.multidegree[0] as usize, self.multidegree[1] as usize))
    }

    fn family_with_slices(&self) -> Result<(usize, usize, usize, &[Poly]), HyperError> {
        let (n, d, e) = self.p1_family().ok_or(HyperError::NotP1Family)?;
        let s = self.slices.as_deref().ok_or(HyperError::SlicesAbsent)?;
        Ok((n, d, e, s))
    }

    /// The slices evaluated at `y`.
    fn slice_values(&self, y: &[Scalar]) -> Result<Vec<Scalar>, HyperError> {
        let (_, _, _, s) = self.family_with_slices()?;
        Ok(s.iter().map(|f| f.evaluate(y)).collect::<Result<_, _>>()?)
    }
}

/// All monomials of a given total degree in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            go(i + 1, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        go(0, deg, &mut vec![0; nvars], &mut out);
    }
    out
}

/// Split a form on `P¹ × Pⁿ` into `f_i`, the coefficient of `x0^(d-i) x1^i`.
pub fn decompose_x(f: &Poly, d: usize) -> Result<Vec<Poly>, HyperError> {
    let ctx = f.ctx();
    if ctx.len() < 3 || ctx.names()[0] != "x0" || ctx.names()[1] != "x1" {
        return Err(HyperError::NotP1Family);
    }
    if let Some(deg) = f.multidegree().degree() {
        if deg[0] != d as i64 {
            return Err(HyperError::WrongDegree {
                expected: format!("x-degree {d}"),
                got: format!("{deg:?}"),
            });
        }
    } else if !f.is_zero() {
        return Err(HyperError::WrongDegree {
            expected: format!("x-degree {d}"),
            got: "inhomogeneous".into(),
        });
    }
    let n = ctx.len() - 3;
    let yc = y_context(n);
    let mut slices = vec![Poly::zero(&yc); d + 1];
    for (m, c) in f.terms() {
        let e = m.exponents();
        let i = e[1] as usize;
        let y = Poly::monomial(&yc, Monomial::new(e[2..].to_vec()), c.clone());
        slices[i] = &slices[i] + &y;
    }
    Ok(slices)
}

/// `Σ x0^(d-i) x1^i f_i` in the given context.
fn assemble(ctx: &Arc<VarContext>, slices: &[Poly]) -> Result<Poly, HyperError> {
    let d = slices.len() - 1;
    let x0 = Poly::var_named(ctx, "x0")?;
    let x1 = Poly::var_named(ctx, "x1")?;
    let mut f = Poly::zero(ctx);
    for (i, s) in slices.iter().enumerate() {
        let t = &(&x0.pow((d - i) as u32) * &x1.pow(i as u32)) * &s.rebase(ctx)?;
        f = &f + &t;
    }
    Ok(f)
}

/// The `(d+1)×(d+1)` companion matrix: `x1` on the diagonal and `-x0` on
/// the subdiagonal of the first `d` columns, slices in the last column.
pub fn companion_matrix(x: &Hypersurface) -> Result<PolyMatrix, HyperError> {
    let (_, d, _, slices) = x.family_with_slices()?;
    let ctx = ambient_context(&x.ambient);
    let x0 = Poly::var_named(&ctx, "x0")?;
    let x1 = Poly::var_named(&ctx, "x1")?;
    let zero = Poly::zero(&ctx);
    let rows: Vec<Vec<Poly>> = (0..=d)
        .map(|i| {
            let mut row: Vec<Poly> = (0..d)
                .map(|j| match i {
                    _ if i == j => x1.clone(),
                    _ if i == j + 1 => -&x0,
                    _ => zero.clone(),
                })
                .collect();
            row.push(slices[i].rebase(&ctx)?);
            Ok(row)
        })
        .collect::<Result<_, HyperError>>()?;
    Ok(PolyMatrix::new(&ctx, rows)?)
}

/// The `(d+1)×3` matrix with columns `(0,-z1,…,-zd)`, `(z1,…,zd,0)` and
/// `(f_0,…,f_d)`, in [`cox_context`] variables.
pub fn matrix_b(x: &Hypersurface) -> Result<PolyMatrix, HyperError> {
    let (n, d, e, slices) = x.family_with_slices()?;
    let ctx = cox_context(n, e, d);
    let z = |k: usize| Poly::var_named(&ctx, &format!("z{k}"));
    let zero = Poly::zero(&ctx);
    let rows: Vec<Vec<Poly>> = (0..=d)
        .map(|j| {
            let c0 = if j >= 1 { -&z(j)? } else { zero.clone() };
            let c1 = if j < d { z(j + 1)? } else { zero.clone() };
            Ok(vec![c0, c1, slices[j].rebase(&ctx)?])
        })
        .collect::<Result<_, HyperError>>()?;
    Ok(PolyMatrix::new(&ctx, rows)?)
}

/// The relations `f_0 + x1 z1`, `f_j - x0 z_j + x1 z_{j+1}`, `f_d - x0 z_d`,
/// i.e. `B · (x0, x1, 1)ᵗ`. Each has degree `(0, e)`.
pub fn cox_equations(x: &Hypersurface) -> Result<Vec<Poly>, HyperError> {
    let b = matrix_b(x)?;
    let ctx = b.ctx().clone();
    let v = vec![
        Poly::var_named(&ctx, "x0")?,
        Poly::var_named(&ctx, "x1")?,
        Poly::constant(&ctx, Scalar::one()),
    ];
    Ok(b.mul_vec(&v)?)
}

/// The ideal generated by [`cox_equations`].
pub fn cox_ideal(x: &Hypersurface) -> Result<IdealBasis, HyperError> {
    let rels = cox_equations(x)?;
    let ctx = rels[0].ctx().clone();
    Ok(IdealBasis::new(&ctx, rels)?)
}

/// A point of a product of projective spaces, one coordinate vector per
/// factor, each scaled so its first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    factors: Vec<Vec<Scalar>>,
}

impl ProjectivePoint {
    pub fn new(factors: Vec<Vec<Scalar>>) -> Result<Self, HyperError> {
        let factors = factors
            .into_iter()
            .map(|v| {
                let lead = v
                    .iter()
                    .find(|c| !c.is_zero())
                    .ok_or_else(|| HyperError::BadPoint("a factor has all coordinates zero".into()))?
                    .inverse()?;
                Ok(v.iter().map(|c| c * &lead).collect())
            })
            .collect::<Result<_, HyperError>>()?;
        Ok(ProjectivePoint { factors })
    }

    /// Parse `"1,1;1,2,0,0"`: factors separated by `;`, coordinates by `,`.
    /// Coordinates are integers or `a/b`, reduced mod `p` when given.
    pub fn parse(s: &str, modulus: Option<Modulus>) -> Result<Self, HyperError> {
        let factors = s
            .split(';')
            .map(|f| {
                f.split(',')
                    .map(|c| {
                        let v: Scalar = c.trim().parse()?;
                        Ok(match modulus {
                            Some(m) => v.reduce(m)?,
                            None => v,
                        })
                    })
                    .collect::<Result<Vec<Scalar>, HyperError>>()
            })
            .collect::<Result<_, _>>()?;
        ProjectivePoint::new(factors)
    }

    pub fn factors(&self) -> &[Vec<Scalar>] {
        &self.factors
    }

    /// Coordinates of all factors, concatenated.
    pub fn flat(&self) -> Vec<Scalar> {
        self.factors.concat()
    }

    fn expect_shape(&self, sizes: &[usize]) -> Result<(), HyperError> {
        let got: Vec<usize> = self.factors.iter().map(Vec::len).collect();
        if got != sizes {
            return Err(HyperError::BadPoint(format!(
                "factor sizes {got:?}, expected {sizes:?}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|v| v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

fn sum_x_slices(x0: &Scalar, x1: &Scalar, fy: &[Scalar]) -> Scalar {
    let d = fy.len() - 1;
    fy.iter().enumerate().fold(Scalar::zero(), |acc, (i, v)| {
        &acc + &(&(&x0.pow((d - i) as u32) * &x1.pow(i as u32)) * v)
    })
}

/// Whether a point of `P¹ × Pⁿ` lies on `X`.
pub fn lies_on(x: &Hypersurface, pt: &ProjectivePoint) -> Result<bool, HyperError> {
    let (n, _, _, _) = x.family_with_slices()?;
    pt.expect_shape(&[2, n + 1])?;
    let fy = x.slice_values(&pt.factors[1])?;
    Ok(sum_x_slices(&pt.factors[0][0], &pt.factors[0][1], &fy).is_zero())
}

/// `φ: X ⇢ X⁺ ⊂ P^{d-1} × Pⁿ`, `(x, y) ↦ (z, y)` with `A·(z, 1)ᵗ = 0`.
pub fn flip_forward(x: &Hypersurface, pt: &ProjectivePoint) -> Result<ProjectivePoint, HyperError> {
    let (n, d, _, _) = x.family_with_slices()?;
    pt.expect_shape(&[2, n + 1])?;
    let (x0, x1) = (&pt.factors[0][0], &pt.factors[0][1]);
    let y = &pt.factors[1];
    let fy = x.slice_values(y)?;
    if !sum_x_slices(x0, x1, &fy).is_zero() {
        return Err(HyperError::NotOnX);
    }
    if fy.iter().all(Scalar::is_zero) {
        return Err(HyperError::Indeterminate("all f_i vanish at y".into()));
    }
    // z[k] holds z_{k+1}
    let mut z = vec![Scalar::zero(); d];
    if !x1.is_zero() {
        let inv = x1.inverse()?;
        z[0] = -&(&fy[0] * &inv);
        for j in 1..d {
            z[j] = &(&(x0 * &z[j - 1]) - &fy[j]) * &inv;
        }
    } else {
        let inv = x0.inverse()?;
        z[d - 1] = &fy[d] * &inv;
        for j in (1..d).rev() {
            z[j - 1] = &(&fy[j] + &(x1 * &z[j])) * &inv;
        }
    }
    ProjectivePoint::new(vec![z, y.clone()])
}

fn b_at(fy: &[Scalar], z: &[Scalar]) -> Vec<Vec<Scalar>> {
    let d = z.len();
    (0..=d)
        .map(|j| {
            vec![
                if j >= 1 { -&z[j - 1] } else { Scalar::zero() },
                if j < d { z[j].clone() } else { Scalar::zero() },
                fy[j].clone(),
            ]
        })
        .collect()
}

/// Whether every maximal minor of `B` vanishes at a point of
/// `P^{d-1} × Pⁿ`, i.e. the point lies on `X⁺`.
pub fn on_flipped_side(x: &Hypersurface, pt: &ProjectivePoint) -> Result<bool, HyperError> {
    let (n, d, _, _) = x.family_with_slices()?;
    pt.expect_shape(&[d, n + 1])?;
    let fy = x.slice_values(&pt.factors[1])?;
    Ok(rank(&b_at(&fy, &pt.factors[0])) < 3)
}

/// `ψ = φ⁻¹`: `(z, y) ↦ (x, y)` where `(x0, x1, 1)` spans `ker B`.
pub fn flip_backward(x: &Hypersurface, pt: &ProjectivePoint) -> Result<ProjectivePoint, HyperError> {
    let (n, d, _, _) = x.family_with_slices()?;
    pt.expect_shape(&[d, n + 1])?;
    let (z, y) = (&pt.factors[0], &pt.factors[1]);
    if z.iter().all(Scalar::is_zero) {
        return Err(HyperError::Indeterminate("all z_i vanish".into()));
    }
    let fy = x.slice_values(y)?;
    let ker = nullspace(&b_at(&fy, z), 3);
    if ker.len() != 1 {
        return Err(HyperError::Nullity(ker.len()));
    }
    let v = &ker[0];
    if v[2].is_zero() {
        return Err(HyperError::Indeterminate(
            "kernel of B has no constant coordinate".into(),
        ));
    }
    let inv = v[2].inverse()?;
    ProjectivePoint::new(vec![vec![&v[0] * &inv, &v[1] * &inv], y.clone()])
}

/// A random `F_p`-point of `X ⊂ P¹ × Pⁿ` outside the indeterminacy locus:
/// `x` is random and `y` is a root of `f(x, a + t b)` on a random affine
/// line. Retries up to `max_tries` lines.
pub fn sample_point<R: Rng>(
    x: &Hypersurface,
    rng: &mut R,
    modulus: Modulus,
    max_tries: usize,
) -> Result<ProjectivePoint, HyperError> {
    let (n, d, e, slices) = x.family_with_slices()?;
    let p = modulus.get() as u64;
    let slices: Vec<Poly> = slices.iter().map(|s| s.reduce(modulus)).collect::<Result<_, _>>()?;
    let rand_elem = |rng: &mut R| modulus.elem(rng.gen_range(0..p as i64));
    let vander: Vec<Vec<Scalar>> = (0..=e as i64)
        .map(|t| (0..=e as u32).map(|k| modulus.elem(t).pow(k)).collect())
        .collect();
    for _ in 0..max_tries {
        let xs = [rand_elem(rng), rand_elem(rng)];
        if xs.iter().all(Scalar::is_zero) {
            continue;
        }
        let base: Vec<Scalar> = (0..=n).map(|_| rand_elem(rng)).collect();
        let dir: Vec<Scalar> = (0..=n).map(|_| rand_elem(rng)).collect();
        let on_line = |t: i64| -> Vec<Scalar> {
            let t = modulus.elem(t);
            base.iter().zip(&dir).map(|(a, b)| a + &(b * &t)).collect()
        };
        // g(t) = f(x, base + t dir) has degree ≤ e; interpolate at 0..=e
        let values: Vec<Scalar> = (0..=e as i64)
            .map(|t| -> Result<Scalar, HyperError> {
                let y = on_line(t);
                let fy: Vec<Scalar> = slices.iter().map(|s| s.evaluate(&y)).collect::<Result<_, _>>()?;
                Ok(sum_x_slices(&xs[0], &xs[1], &fy))
            })
            .collect::<Result<_, _>>()?;
        let coeffs: Vec<u64> = solve(&vander, &values)
            .expect("Vandermonde on distinct nodes is invertible")
            .iter()
            .map(|c| c.to_i64().expect("residue") as u64)
            .collect();
        let start = rng.gen_range(0..p);
        let root = (0..p)
            .map(|k| (start + k) % p)
            .find(|&t| coeffs.iter().rev().fold(0u64, |acc, c| (acc * t + c) % p) == 0);
        let Some(t) = root else { continue };
        let y = on_line(t as i64);
        if y.iter().all(Scalar::is_zero) {
            continue;
        }
        let fy: Vec<Scalar> = slices.iter().map(|s| s.evaluate(&y)).collect::<Result<_, _>>()?;
        if fy.iter().all(Scalar::is_zero) {
            continue;
        }
        debug_assert_eq!(fy.len(), d + 1);
        return ProjectivePoint::new(vec![xs.to_vec(), y]);
    }
    Err(HyperError::BadPoint(format!("no point found in {max_tries} tries")))
}

/// `X · D_1 ⋯ D_k` on the ambient product, with `k = dim X`: the coefficient
/// of `∏ H_i^{n_i}` in `[X] · ∏ D_j` modulo `H_i^{n_i + 1}`.
pub fn intersection_number(x: &Hypersurface, classes: &[DivisorClass]) -> Result<i128, HyperError> {
    let dims = x.ambient.dims();
    if classes.len() != x.dim() {
        return Err(HyperError::ClassCount {
            expected: x.dim(),
            got: classes.len(),
        });
    }
    if let Some(bad) = classes.iter().find(|c| c.rank() != dims.len()) {
        return Err(ConeError::RankMismatch {
            expected: dims.len(),
            got: bad.rank(),
        }
        .into());
    }
    let mut acc: BTreeMap<Vec<u32>, i128> = BTreeMap::from([(vec![0u32; dims.len()], 1)]);
    for c in std::iter::once(&x.multidegree).chain(classes) {
        let mut next: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
        for (exps, coeff) in &acc {
            for (i, &ci) in c.coords().iter().enumerate() {
                if ci == 0 || exps[i] as usize == dims[i] {
                    continue;
                }
                let mut e = exps.clone();
                e[i] += 1;
                let t = coeff.checked_mul(ci as i128).ok_or(HyperError::Overflow)?;
                let slot = next.entry(e).or_insert(0);
                *slot = slot.checked_add(t).ok_or(HyperError::Overflow)?;
            }
        }
        acc = next;
    }
    let top: Vec<u32> = dims.iter().map(|&n| n as u32).collect();
    Ok(acc.get(&top).copied().unwrap_or(0))
}

/// `K_X = (K_P + X)|_X`, component `i` equal to `d_i - n_i - 1`.
pub fn canonical_class(ambient: &AmbientProduct, multidegree: &DivisorClass) -> DivisorClass {
    DivisorClass::new(
        ambient
            .dims
            .iter()
            .zip(multidegree.coords())
            .map(|(&n, &d)| d - n as i64 - 1)
            .collect(),
    )
}

/// Action on `N¹` of the covering involution of the projection forgetting
/// P¹ factor `factor` (zero-based): `H_f ↦ -H_f + Σ_{j≠f} d_j H_j`.
pub fn involution_action(
    ambient: &AmbientProduct,
    multidegree: &DivisorClass,
    factor: usize,
) -> Result<LatticeMap, HyperError> {
    check_multidegree(ambient, multidegree)?;
    let r = ambient.rank();
    if factor >= r {
        return Err(HyperError::InvalidAmbient(format!("no factor {factor}")));
    }
    if ambient.dims[factor] != 1 || multidegree[factor] != 2 {
        return Err(HyperError::NotDoubleCover {
            factor,
            degree: multidegree[factor],
        });
    }
    let images: Vec<DivisorClass> = (0..r)
        .map(|j| {
            if j == factor {
                DivisorClass::new((0..r).map(|i| if i == factor { -1 } else { multidegree[i] }).collect())
            } else {
                DivisorClass::basis(r, j)
            }
        })
        .collect();
    Ok(LatticeMap::from_images(&images)?)
}

/// The flip `X ⇢ X⁺ ⊂ P^{d-1} × Pⁿ` at the level of `N¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipModel {
    pub source: AmbientProduct,
    pub target: AmbientProduct,
    /// Columns: pullbacks of `O_{X⁺}(1,0)` and `O_{X⁺}(0,1)`.
    pub pullback: LatticeMap,
}

pub fn flip_model(x: &Hypersurface) -> Result<FlipModel, HyperError> {
    let (n, d, e) = x.p1_family().ok_or(HyperError::NotP1Family)?;
    if d < 2 {
        return Err(HyperError::InvalidMultidegree("the flip needs d ≥ 2".into()));
    }
    Ok(FlipModel {
        source: x.ambient.clone(),
        target: AmbientProduct::new(vec![d - 1, n])?,
        pullback: LatticeMap::from_images(&[DivisorClass::new(vec![-1, e as i64]), DivisorClass::new(vec![0, 1])])?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dc(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.to_vec())
    }

    fn f5() -> Modulus {
        Modulus::new(5).unwrap()
    }

    #[test]
    fn slices_of_documented_forms() {
        let amb = AmbientProduct::p1_pn(3);
        let c = ambient_context(&amb);
        let f = parse_poly(&c, "x0*y0^2 + x1*y1^2").unwrap();
        let s = decompose_x(&f, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].to_string(), "y0^2");
        assert_eq!(s[1].to_string(), "y1^2");
        let g = parse_poly(&c, "x0^2*y0^2").unwrap();
        let s = decompose_x(&g, 2).unwrap();
        assert_eq!(s[0].to_string(), "y0^2");
        assert!(s[1].is_zero() && s[2].is_zero());
        assert!(decompose_x(&g, 1).is_err());
    }

    #[test]
    fn companion_and_b_shapes() {
        let x = Hypersurface::fixture(1, 2, 3).unwrap();
        let a = companion_matrix(&x).unwrap();
        assert_eq!(a.get(0, 0).to_string(), "x1");
        assert_eq!(a.get(1, 0).to_string(), "-x0");
        assert_eq!(a.get(0, 1).to_string(), "y0^2");
        let b = matrix_b(&Hypersurface::fixture(2, 2, 3).unwrap()).unwrap();
        let row = |r: usize| b.row(r).iter().map(Poly::to_string).collect::<Vec<_>>();
        assert_eq!(row(0), ["0", "z1", "y0^2"]);
        assert_eq!(row(1), ["-z1", "z2", "y1^2"]);
        assert_eq!(row(2), ["-z2", "0", "y2^2"]);
    }

    #[test]
    fn cox_relations() {
        let x = Hypersurface::fixture(1, 3, 3).unwrap();
        let rels: Vec<String> = cox_equations(&x).unwrap().iter().map(Poly::to_string).collect();
        assert_eq!(rels, ["y0^3 + x1*z1", "y1^3 - x0*z1"]);
        let x = Hypersurface::fixture(2, 2, 3).unwrap();
        let rels = cox_equations(&x).unwrap();
        assert_eq!(rels[1].to_string(), "y1^2 - x0*z1 + x1*z2");
        for r in &rels {
            assert_eq!(r.multidegree().degree(), Some(&[0, 2][..]));
        }
    }

    #[test]
    fn determinant_is_f_for_small_d() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 1..=6 {
            let x = Hypersurface::random(d, 2, 2, &mut rng, 3, None).unwrap();
            assert_eq!(
                &companion_matrix(&x).unwrap().det().unwrap(),
                x.form().unwrap(),
                "d={d}"
            );
        }
    }

    #[test]
    fn documented_flip_over_f5() {
        let x = Hypersurface::fixture(2, 2, 3).unwrap();
        let pt = ProjectivePoint::parse("1,1;1,2,0,0", Some(f5())).unwrap();
        assert!(lies_on(&x, &pt).unwrap());
        let img = flip_forward(&x, &pt).unwrap();
        assert_eq!(img.to_string(), "1,0;1,2,0,0");
        assert!(on_flipped_side(&x, &img).unwrap());
        assert_eq!(flip_backward(&x, &img).unwrap(), pt);
    }

    #[test]
    fn flip_errors() {
        let x = Hypersurface::fixture(2, 2, 3).unwrap();
        let bad = ProjectivePoint::parse("1,1;0,0,0,1", Some(f5())).unwrap();
        assert!(matches!(flip_forward(&x, &bad), Err(HyperError::Indeterminate(_))));
        let off = ProjectivePoint::parse("1,1;1,1,0,0", Some(f5())).unwrap();
        assert_eq!(flip_forward(&x, &off), Err(HyperError::NotOnX));
        // zero z-block is rejected before normalization can fail
        let zeros = ProjectivePoint {
            factors: vec![vec![f5().zero(), f5().zero()], vec![f5().one(); 4]],
        };
        assert!(matches!(flip_backward(&x, &zeros), Err(HyperError::Indeterminate(_))));
    }

    #[test]
    fn round_trips_over_large_prime() {
        let m = Modulus::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (d, e, n) in [(2, 2, 3), (3, 2, 3), (2, 3, 2)] {
            let x = Hypersurface::random(d, e, n, &mut rng, 0, Some(m)).unwrap();
            for _ in 0..20 {
                let pt = sample_point(&x, &mut rng, m, 100).unwrap();
                let img = flip_forward(&x, &pt).unwrap();
                assert!(on_flipped_side(&x, &img).unwrap());
                assert_eq!(flip_backward(&x, &img).unwrap(), pt);
            }
        }
    }

    #[test]
    fn symbolic_recurrence_solves_relations() {
        // with Z_j = x1^j z_j the relations scaled by x1^j become
        // polynomial identities; the last one leaves f itself
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 1..=4 {
            let x = Hypersurface::random(d, 2, 2, &mut rng, 3, None).unwrap();
            let ctx = ambient_context(x.ambient());
            let x0 = Poly::var_named(&ctx, "x0").unwrap();
            let x1 = Poly::var_named(&ctx, "x1").unwrap();
            let f: Vec<Poly> = x.slices().unwrap().iter().map(|s| s.rebase(&ctx).unwrap()).collect();
            let mut big_z = vec![-&f[0]];
            for j in 1..d {
                let t = &(&x0 * &big_z[j - 1]) - &(&x1.pow(j as u32) * &f[j]);
                big_z.push(t);
            }
            // x1^(j+1) (f_j - x0 z_j + x1 z_{j+1}) = x1^(j+1) f_j - x0 x1 Z_j + x1 Z_{j+1}
            assert!((&f[0] + &big_z[0]).is_zero());
            for j in 1..d {
                let lhs = &(&(&x1.pow(j as u32 + 1) * &f[j]) - &(&(&x0 * &x1) * &big_z[j - 1])) + &(&x1 * &big_z[j]);
                assert!(lhs.is_zero(), "relation {j} at d={d}");
            }
            let last = &(&x1.pow(d as u32) * &f[d]) - &(&x0 * &big_z[d - 1]);
            assert_eq!(&last, x.form().unwrap());
        }
    }

    #[test]
    fn intersection_examples() {
        let x = Hypersurface::new(AmbientProduct::p1_pn(3), dc(&[4, 2])).unwrap();
        let l = dc(&[-4, 6]);
        assert_eq!(intersection_number(&x, &[l.clone(), l.clone(), l]).unwrap(), 0);
        let h1 = dc(&[1, 0]);
        let h2 = dc(&[0, 1]);
        assert_eq!(
            intersection_number(&x, &[h1.clone(), h1.clone(), h2.clone()]).unwrap(),
            0
        );
        assert_eq!(
            intersection_number(&x, &[h2.clone(), h2.clone(), h2.clone()]).unwrap(),
            4
        );
        assert_eq!(intersection_number(&x, &[h1, h2.clone(), h2]).unwrap(), 2);
        assert!(matches!(
            intersection_number(&x, &[dc(&[1, 0])]),
            Err(HyperError::ClassCount { .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_class(&AmbientProduct::p1_pn(4), &dc(&[2, 5])), dc(&[0, 0]));
        assert_eq!(canonical_class(&AmbientProduct::p1_pn(3), &dc(&[4, 2])), dc(&[2, -2]));
        let kaw = AmbientProduct::new(vec![1, 1, 2]).unwrap();
        assert_eq!(canonical_class(&kaw, &dc(&[2, 2, 3])), dc(&[0, 0, 0]));
    }

    #[test]
    fn involution_examples() {
        let s = involution_action(&AmbientProduct::p1_pn(3), &dc(&[2, 3]), 0).unwrap();
        assert_eq!(s.apply(&dc(&[1, 0])).unwrap(), dc(&[-1, 3]));
        assert!(s.is_involution());
        let kaw = AmbientProduct::new(vec![1, 1, 2]).unwrap();
        let s = involution_action(&kaw, &dc(&[2, 2, 3]), 0).unwrap();
        assert_eq!(s.apply(&dc(&[1, 0, 0])).unwrap(), dc(&[-1, 2, 3]));
        assert!(s.is_involution());
        assert!(involution_action(&AmbientProduct::p1_pn(3), &dc(&[3, 3]), 0).is_err());
    }

    #[test]
    fn involution_preserves_intersections_on_surfaces() {
        // on surfaces the involution is regular; from n = 3 on it is a flop
        // and the cubic form changes, e.g. L = H_1 + H_2 on (2,2) in P^1 x P^3
        let x3 = Hypersurface::new(AmbientProduct::p1_pn(3), dc(&[2, 2])).unwrap();
        let s3 = involution_action(x3.ambient(), x3.multidegree(), 0).unwrap();
        let l = dc(&[1, 1]);
        let top3 = |c: &DivisorClass| intersection_number(&x3, &vec![c.clone(); 3]).unwrap();
        assert_ne!(top3(&l), top3(&s3.apply(&l).unwrap()));
        for (n, e) in [(2, 2), (2, 3), (2, 5)] {
            let x = Hypersurface::new(AmbientProduct::p1_pn(n), dc(&[2, e])).unwrap();
            let s = involution_action(x.ambient(), x.multidegree(), 0).unwrap();
            for a in -2..=2 {
                for b in 0..=3 {
                    let l = dc(&[a, b]);
                    let sl = s.apply(&l).unwrap();
                    let top = |c: &DivisorClass| intersection_number(&x, &vec![c.clone(); n]).unwrap();
                    assert_eq!(top(&l), top(&sl), "n={n} e={e} L={l}");
                }
            }
        }
    }

    #[test]
    fn flip_model_is_unimodular() {
        let m = flip_model(&Hypersurface::fixture(2, 2, 3).unwrap()).unwrap();
        assert_eq!(m.pullback.det().abs(), 1);
        assert_eq!(m.pullback.apply(&dc(&[1, 0])).unwrap(), dc(&[-1, 2]));
        assert_eq!(m.target.dims(), &[1, 3]);
    }

    #[test]
    fn spec_round_trip() {
        let spec: HypersurfaceSpec =
            serde_json::from_str(r#"{"factors":[1,3],"multidegree":[1,2],"f":"x0*y0^2 + x1*y1^2"}"#).unwrap();
        let x = Hypersurface::from_spec(&spec).unwrap();
        assert_eq!(x.slices().unwrap().len(), 2);
        assert_eq!(Hypersurface::from_spec(&x.to_spec()).unwrap(), x);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn top_power_closed_form(a in -6i64..=6, b in -6i64..=6, d in 1i64..=5, e in 1i64..=5, n in 2usize..=5) {
            let x = Hypersurface::new(AmbientProduct::p1_pn(n), dc(&[d, e])).unwrap();
            let l = dc(&[a, b]);
            let got = intersection_number(&x, &vec![l; n]).unwrap();
            let expect = (b as i128).pow(n as u32 - 1) * (b as i128 * d as i128 + a as i128 * e as i128 * n as i128);
            prop_assert_eq!(got, expect);
        }

        #[test]
        fn intersection_is_symmetric_and_linear(
            cs in prop::collection::vec((-4i64..=4, -4i64..=4), 3),
            k in -3i64..=3,
        ) {
            let x = Hypersurface::new(AmbientProduct::p1_pn(3), dc(&[3, 2])).unwrap();
            let c: Vec<DivisorClass> = cs.iter().map(|(a, b)| dc(&[*a, *b])).collect();
            let base = intersection_number(&x, &c).unwrap();
            let swapped = intersection_number(&x, &[c[2].clone(), c[0].clone(), c[1].clone()]).unwrap();
            prop_assert_eq!(base, swapped);
            let scaled = intersection_number(&x, &[k * &c[0], c[1].clone(), c[2].clone()]).unwrap();
            prop_assert_eq!(scaled, k as i128 * base);
            let sum = intersection_number(&x, &[&c[0] + &c[1], c[1].clone(), c[2].clone()]).unwrap();
            let split = base + intersection_number(&x, &[c[1].clone(), c[1].clone(), c[2].clone()]).unwrap();
            prop_assert_eq!(sum, split);
        }

        #[test]
        fn reassembly(seed in any::<u64>(), d in 1usize..=4, e in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = Hypersurface::random(d, e, 2, &mut rng, 4, None).unwrap();
            let back = decompose_x(x.form().unwrap(), d).unwrap();
            prop_assert_eq!(back.as_slice(), x.slices().unwrap());
        }
    }
}
