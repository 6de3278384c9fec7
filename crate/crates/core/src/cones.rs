//! Rational polyhedral cones in the Néron–Severi lattice `Z^ρ`.
//!
//! Cones are stored by primitive extremal rays. In rank 2 the two rays are
//! kept in counterclockwise order; in higher rank they are sorted
//! lexicographically. Either way equal cones compare equal.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::polyalg::{rank, scalar_det, solve, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("a cone needs at least one ray")]
    Empty,
    #[error("zero ray")]
    ZeroRay,
    #[error("rays span a line; the cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("union is not a convex cone")]
    NotConvex,
    #[error("operation needs rank 2, cone has rank {0}")]
    NeedsRankTwo(usize),
    #[error("open-ray flags do not match the rays")]
    FlagCount,
}

/// Integer vector in the basis `H_1, …, H_ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass(coords)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    /// The basis class `H_{i+1}` (zero-based index).
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DivisorClass(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    /// Divide by the gcd of the entries. Direction is preserved.
    pub fn primitive(&self) -> DivisorClass {
        let g = self.gcd();
        if g == 0 {
            return self.clone();
        }
        DivisorClass(self.0.iter().map(|c| c / g).collect())
    }

    pub fn dot(&self, o: &DivisorClass) -> i64 {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    fn scalars(&self) -> Vec<Scalar> {
        self.0.iter().map(|&c| Scalar::int(c)).collect()
    }
}

impl Index<usize> for DivisorClass {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, v: &DivisorClass) -> DivisorClass {
        DivisorClass(v.0.iter().map(|a| self * a).collect())
    }
}

impl From<Vec<i64>> for DivisorClass {
    fn from(v: Vec<i64>) -> Self {
        DivisorClass(v)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn cross(u: &DivisorClass, w: &DivisorClass) -> i64 {
    u[0] * w[1] - u[1] * w[0]
}

fn rot_ccw(v: &DivisorClass) -> DivisorClass {
    DivisorClass(vec![-v[1], v[0]])
}

fn rot_cw(v: &DivisorClass) -> DivisorClass {
    DivisorClass(vec![v[1], -v[0]])
}

/// Whether `v` is a nonnegative combination of `gens`, by Carathéodory:
/// some linearly independent subset must carry `v` with nonnegative
/// coefficients.
fn in_cone_of(gens: &[DivisorClass], v: &DivisorClass) -> bool {
    if v.is_zero() {
        return true;
    }
    let r = v.rank();
    let target = v.scalars();
    let mut subset = Vec::new();
    search_subsets(gens, r, 0, &mut subset, &target)
}

fn search_subsets(gens: &[DivisorClass], r: usize, start: usize, subset: &mut Vec<usize>, target: &[Scalar]) -> bool {
    if !subset.is_empty() {
        // columns are the chosen generators
        let m: Vec<Vec<Scalar>> = (0..r)
            .map(|row| subset.iter().map(|&g| Scalar::int(gens[g][row])).collect())
            .collect();
        if rank(&m) < subset.len() {
            return false;
        }
        if let Some(x) = solve(&m, target) {
            if x.iter().all(|c| !c.is_negative()) {
                return true;
            }
        }
    }
    if subset.len() == r {
        return false;
    }
    for g in start..gens.len() {
        subset.push(g);
        if search_subsets(gens, r, g + 1, subset, target) {
            return true;
        }
        subset.pop();
    }
    false
}

/// Finitely generated strictly convex cone with per-ray open flags.
///
/// An open ray is excluded from the cone (the origin stays in). Membership
/// through [`RationalCone::contains`] ignores the flags and tests the closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ConeJson", into = "ConeJson")]
pub struct RationalCone {
    rays: Vec<DivisorClass>,
    open: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    rays: Vec<Vec<i64>>,
    open_rays: Vec<bool>,
}

impl From<RationalCone> for ConeJson {
    fn from(c: RationalCone) -> Self {
        ConeJson {
            rays: c.rays.into_iter().map(|r| r.0).collect(),
            open_rays: c.open,
        }
    }
}

impl TryFrom<ConeJson> for RationalCone {
    type Error = ConeError;
    fn try_from(j: ConeJson) -> Result<Self, ConeError> {
        let c = cone_from_rays(&j.rays.into_iter().map(DivisorClass).collect::<Vec<_>>())?;
        if j.open_rays.len() != c.rays.len() {
            return Err(ConeError::FlagCount);
        }
        let flagged: Vec<DivisorClass> = c
            .rays
            .iter()
            .zip(&j.open_rays)
            .filter(|(_, o)| **o)
            .map(|(r, _)| r.clone())
            .collect();
        Ok(c.with_open(&flagged))
    }
}

/// Canonical cone generated by `rays`: primitive, extremal, ordered.
pub fn cone_from_rays(rays: &[DivisorClass]) -> Result<RationalCone, ConeError> {
    let first = rays.first().ok_or(ConeError::Empty)?;
    let r = first.rank();
    if let Some(bad) = rays.iter().find(|v| v.rank() != r) {
        return Err(ConeError::RankMismatch {
            expected: r,
            got: bad.rank(),
        });
    }
    if rays.iter().any(DivisorClass::is_zero) {
        return Err(ConeError::ZeroRay);
    }
    let prim: Vec<DivisorClass> = rays
        .iter()
        .map(DivisorClass::primitive)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if prim.iter().any(|g| in_cone_of(&prim, &-g)) {
        return Err(ConeError::NotStrictlyConvex);
    }
    let mut extremal = Vec::new();
    for (i, g) in prim.iter().enumerate() {
        let others: Vec<DivisorClass> = prim
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        if !in_cone_of(&others, g) {
            extremal.push(g.clone());
        }
    }
    if r == 2 && extremal.len() == 2 && cross(&extremal[0], &extremal[1]) < 0 {
        extremal.swap(0, 1);
    }
    let open = vec![false; extremal.len()];
    Ok(RationalCone { rays: extremal, open })
}

/// Whether `v` lies in the closure of `c`.
pub fn cone_contains(c: &RationalCone, v: &DivisorClass) -> Result<bool, ConeError> {
    c.contains(v)
}

impl RationalCone {
    /// The cone spanned by the coordinate rays `H_1, …, H_ρ`.
    pub fn orthant(rank: usize) -> Self {
        let rays: Vec<DivisorClass> = (0..rank).map(|i| DivisorClass::basis(rank, i)).collect();
        cone_from_rays(&rays).expect("orthant is strictly convex")
    }

    pub fn rays(&self) -> &[DivisorClass] {
        &self.rays
    }

    pub fn open_flags(&self) -> &[bool] {
        &self.open
    }

    pub fn rank(&self) -> usize {
        self.rays[0].rank()
    }

    pub fn is_open_ray(&self, v: &DivisorClass) -> bool {
        let p = v.primitive();
        self.rays.iter().zip(&self.open).any(|(r, o)| *o && *r == p)
    }

    pub fn has_open_rays(&self) -> bool {
        self.open.iter().any(|o| *o)
    }

    /// Same cone with the given rays flagged open and all others closed.
    pub fn with_open(&self, open_rays: &[DivisorClass]) -> Self {
        let prim: Vec<DivisorClass> = open_rays.iter().map(DivisorClass::primitive).collect();
        RationalCone {
            rays: self.rays.clone(),
            open: self.rays.iter().map(|r| prim.contains(r)).collect(),
        }
    }

    /// Same cone with every flag cleared.
    pub fn closure(&self) -> Self {
        self.with_open(&[])
    }

    fn check_rank(&self, v: &DivisorClass) -> Result<(), ConeError> {
        if v.rank() != self.rank() {
            return Err(ConeError::RankMismatch {
                expected: self.rank(),
                got: v.rank(),
            });
        }
        Ok(())
    }

    /// Membership in the closed cone.
    pub fn contains(&self, v: &DivisorClass) -> Result<bool, ConeError> {
        self.check_rank(v)?;
        Ok(in_cone_of(&self.rays, v))
    }

    /// Membership honoring open flags: a nonzero class on an open ray is
    /// excluded.
    pub fn contains_respecting_open(&self, v: &DivisorClass) -> Result<bool, ConeError> {
        Ok(self.contains(v)? && (v.is_zero() || !self.is_open_ray(v)))
    }

    /// Every ray of `other` lies in the closure of `self`.
    pub fn contains_cone(&self, other: &RationalCone) -> Result<bool, ConeError> {
        for r in &other.rays {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `v` lies in the interior (rank 2 only).
    pub fn interior_contains_2d(&self, v: &DivisorClass) -> Result<bool, ConeError> {
        self.need_rank_two()?;
        self.check_rank(v)?;
        Ok(self.rays.len() == 2 && cross(&self.rays[0], v) > 0 && cross(v, &self.rays[1]) > 0)
    }

    fn need_rank_two(&self) -> Result<(), ConeError> {
        match self.rank() {
            2 => Ok(()),
            r => Err(ConeError::NeedsRankTwo(r)),
        }
    }

    /// Dual cone `{w : w·v ≥ 0 for all v}` in rank 2, by quarter turns.
    pub fn dual_2d(&self) -> Result<RationalCone, ConeError> {
        self.need_rank_two()?;
        match self.rays.as_slice() {
            [u, w] => cone_from_rays(&[rot_cw(w), rot_ccw(u)]),
            // the dual of a ray is a half-plane; not strictly convex
            _ => Err(ConeError::NotStrictlyConvex),
        }
    }
}

impl fmt::Display for RationalCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rays
            .iter()
            .zip(&self.open)
            .map(|(r, o)| if *o { format!("{r}°") } else { r.to_string() })
            .collect();
        write!(f, "cone[{}]", parts.join(", "))
    }
}

/// Convex union of two rank-2 cones that overlap or share a ray.
pub fn cone_union_2d(a: &RationalCone, b: &RationalCone) -> Result<RationalCone, ConeError> {
    a.need_rank_two()?;
    b.need_rank_two()?;
    let meet =
        a.rays.iter().any(|r| b.contains(r).unwrap_or(false)) || b.rays.iter().any(|r| a.contains(r).unwrap_or(false));
    if !meet {
        return Err(ConeError::NotConvex);
    }
    let all: Vec<DivisorClass> = a.rays.iter().chain(&b.rays).cloned().collect();
    let hull = cone_from_rays(&all).map_err(|_| ConeError::NotConvex)?;
    // a ray is open in the union only if every input containing it has it open
    let open: Vec<DivisorClass> = hull
        .rays
        .iter()
        .filter(|r| {
            let in_a = a.contains(r).unwrap_or(false);
            let in_b = b.contains(r).unwrap_or(false);
            (!in_a || a.is_open_ray(r)) && (!in_b || b.is_open_ray(r))
        })
        .cloned()
        .collect();
    Ok(hull.with_open(&open))
}

/// Intersection of two closed rank-2 cones; `None` when it is only the
/// origin.
pub fn cone_intersection_2d(a: &RationalCone, b: &RationalCone) -> Result<Option<RationalCone>, ConeError> {
    a.need_rank_two()?;
    b.need_rank_two()?;
    let candidates: Vec<DivisorClass> = a
        .rays
        .iter()
        .filter(|r| b.contains(r).unwrap_or(false))
        .chain(b.rays.iter().filter(|r| a.contains(r).unwrap_or(false)))
        .cloned()
        .collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    cone_from_rays(&candidates).map(Some)
}

/// Integer linear map on `N¹`, stored as a square matrix acting on column
/// vectors: column `j` is the image of `H_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeMap {
    matrix: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn identity(rank: usize) -> Self {
        LatticeMap {
            matrix: (0..rank).map(|i| DivisorClass::basis(rank, i).0).collect(),
        }
    }

    /// Build from the images of the basis classes.
    pub fn from_images(images: &[DivisorClass]) -> Result<Self, ConeError> {
        let r = images.len();
        if let Some(bad) = images.iter().find(|v| v.rank() != r) {
            return Err(ConeError::RankMismatch {
                expected: r,
                got: bad.rank(),
            });
        }
        Ok(LatticeMap {
            matrix: (0..r).map(|i| images.iter().map(|c| c[i]).collect()).collect(),
        })
    }

    /// Build from rows.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, ConeError> {
        let r = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != r) {
            return Err(ConeError::RankMismatch {
                expected: r,
                got: bad.len(),
            });
        }
        Ok(LatticeMap { matrix: rows })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, v: &DivisorClass) -> Result<DivisorClass, ConeError> {
        if v.rank() != self.rank() {
            return Err(ConeError::RankMismatch {
                expected: self.rank(),
                got: v.rank(),
            });
        }
        Ok(DivisorClass(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> Result<LatticeMap, ConeError> {
        if other.rank() != self.rank() {
            return Err(ConeError::RankMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        let r = self.rank();
        Ok(LatticeMap {
            matrix: (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| (0..r).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                        .collect()
                })
                .collect(),
        })
    }

    pub fn det(&self) -> i64 {
        let m: Vec<Vec<Scalar>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::int(v)).collect())
            .collect();
        scalar_det(&m).to_i64().expect("integer determinant")
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self)
            .map(|sq| sq == LatticeMap::identity(self.rank()))
            .unwrap_or(false)
    }
}

/// Cone generated by the images of the rays, with open flags carried along.
pub fn apply_map(m: &LatticeMap, c: &RationalCone) -> Result<RationalCone, ConeError> {
    let images: Vec<DivisorClass> = c.rays.iter().map(|r| m.apply(r)).collect::<Result<_, _>>()?;
    let open: Vec<DivisorClass> = images
        .iter()
        .zip(&c.open)
        .filter(|(_, o)| **o)
        .map(|(r, _)| r.clone())
        .collect();
    Ok(cone_from_rays(&images)?.with_open(&open))
}

/// Distinct images of `seed` under all words of length at most `max_len`
/// in `gens`, in breadth-first order.
pub fn orbit_chambers(
    gens: &[LatticeMap],
    seed: &RationalCone,
    max_len: usize,
) -> Result<Vec<RationalCone>, ConeError> {
    let mut seen: BTreeSet<Vec<DivisorClass>> = BTreeSet::new();
    let mut out = vec![seed.clone()];
    seen.insert(seed.rays.clone());
    let mut queue = VecDeque::from([(seed.clone(), 0usize)]);
    while let Some((c, depth)) = queue.pop_front() {
        if depth == max_len {
            continue;
        }
        for g in gens {
            let img = apply_map(g, &c)?;
            if seen.insert(img.rays.clone()) {
                out.push(img.clone());
                queue.push_back((img, depth + 1));
            }
        }
    }
    Ok(out)
}
