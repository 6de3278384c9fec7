//! Variation of GIT for `Z²`-graded polynomial rings.
//!
//! The character plane is cut by the rays of the variable degrees into
//! chambers; each chamber and each interior ray (wall) has an irrelevant
//! ideal, computed here as the squarefree supports of monomials whose degree
//! is a positive multiple of the character.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::CoxPresentation;
use crate::cones::{cone_from_rays, ConeError, DivisorClass, RationalCone};
use crate::hypersurface::{ambient_context, AmbientProduct, HyperError};
use crate::polyalg::{ideal_codim, Budget, IdealBasis, Monomial, Poly, PolyError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GitError {
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error("weight column {0} is zero")]
    ZeroColumn(usize),
    #[error("weights must be rank-2 vectors")]
    NotRankTwo,
    #[error("all weights lie on one ray")]
    Degenerate,
    #[error("weights do not span a strictly convex cone")]
    NotPointed,
    #[error("the character is zero")]
    ZeroCharacter,
    #[error("character {0} lies outside the cone spanned by the weights")]
    OutsideSupport(DivisorClass),
    #[error("irrelevant ideal did not stabilize between bounds {bound} and {doubled}")]
    NotStable { bound: i64, doubled: i64 },
    #[error("{0} variables exceed the subset enumeration limit of {MAX_GIT_VARS}")]
    TooManyVariables(usize),
    #[error("names and columns differ in length")]
    NameCount,
}

/// Largest variable count for subset enumeration.
pub const MAX_GIT_VARS: usize = 20;

/// A `2 × N` integer weight matrix, one named column per variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    columns: Vec<DivisorClass>,
    names: Vec<String>,
}

impl WeightSystem {
    pub fn new(columns: Vec<DivisorClass>, names: Vec<String>) -> Result<Self, GitError> {
        if names.len() != columns.len() {
            return Err(GitError::NameCount);
        }
        for (i, c) in columns.iter().enumerate() {
            if c.rank() != 2 {
                return Err(GitError::NotRankTwo);
            }
            if c.is_zero() {
                return Err(GitError::ZeroColumn(i));
            }
        }
        Ok(WeightSystem { columns, names })
    }

    /// Columns `(1,0)×2, (0,1)×(n+1), (-1,e)×d`.
    pub fn standard(n: usize, e: usize, d: usize) -> Self {
        weight_system_of(&CoxPresentation::p1_family(n, d, e)).expect("standard weights are nonzero")
    }

    pub fn columns(&self) -> &[DivisorClass] {
        &self.columns
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// The cone spanned by all columns.
    pub fn support(&self) -> Result<RationalCone, GitError> {
        cone_from_rays(&self.columns).map_err(|e| match e {
            ConeError::NotStrictlyConvex => GitError::NotPointed,
            e => GitError::Cone(e),
        })
    }

    /// `4·|χ|₁·max(E, D)` with `E` the largest weight entry and `D` the number
    /// of columns outside the first quadrant.
    pub fn default_bound(&self, chi: &DivisorClass) -> i64 {
        let big = self
            .columns
            .iter()
            .flat_map(|c| c.coords().iter().map(|v| v.abs()))
            .max()
            .unwrap_or(1);
        let neg = self
            .columns
            .iter()
            .filter(|c| c.coords().iter().any(|&v| v < 0))
            .count() as i64;
        4 * chi.coords().iter().map(|v| v.abs()).sum::<i64>() * big.max(neg).max(1)
    }
}

/// The weight matrix of a Cox presentation.
pub fn weight_system_of(p: &CoxPresentation) -> Result<WeightSystem, GitError> {
    WeightSystem::new(p.generator_degrees(), p.generator_names())
}

fn cross(u: &DivisorClass, v: &DivisorClass) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

/// Maximal chambers and walls of the GIT fan in the character plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberFan {
    /// Two-dimensional chambers, counterclockwise.
    pub chambers: Vec<RationalCone>,
    /// Interior rays separating consecutive chambers.
    pub walls: Vec<DivisorClass>,
}

/// Distinct column rays sorted by angle; consecutive pairs bound chambers.
pub fn chamber_fan(w: &WeightSystem) -> Result<ChamberFan, GitError> {
    w.support()?;
    let mut rays: Vec<DivisorClass> = Vec::new();
    for c in w.columns() {
        let p = c.primitive();
        if !rays.contains(&p) {
            rays.push(p);
        }
    }
    if rays.len() < 2 {
        return Err(GitError::Degenerate);
    }
    // inside a pointed cone, cross(u, v) > 0 orders u before v
    rays.sort_by(|u, v| 0.cmp(&cross(u, v)));
    let chambers = rays.windows(2).map(cone_from_rays).collect::<Result<Vec<_>, _>>()?;
    Ok(ChamberFan {
        chambers,
        walls: rays[1..rays.len() - 1].to_vec(),
    })
}

/// `Y, Y+, Y++, …` for chambers and `Z, Z', …` for walls, counterclockwise.
pub fn chamber_label(i: usize) -> String {
    format!("Y{}", "+".repeat(i))
}

pub fn wall_label(i: usize) -> String {
    format!("Z{}", "'".repeat(i))
}

/// Minimal squarefree supports, as sorted variable index lists.
pub type Supports = Vec<Vec<usize>>;

/// Whether some monomial with support exactly `counts` (multiplicities of
/// each distinct degree) has degree `kχ` with `1 ≤ k ≤ k_max`.
fn support_reaches(degs: &[DivisorClass], counts: &[usize], chi: &DivisorClass, k_max: i64, func: &[i64; 2]) -> bool {
    let weight = |v: &[i64; 2]| v[0] * func[0] + v[1] * func[1];
    let gens: Vec<[i64; 2]> = degs
        .iter()
        .zip(counts)
        .filter(|(_, c)| **c > 0)
        .map(|(d, _)| [d[0], d[1]])
        .collect();
    let mut base = [0i64; 2];
    for (d, &c) in degs.iter().zip(counts) {
        base[0] += d[0] * c as i64;
        base[1] += d[1] * c as i64;
    }
    let chi = [chi[0], chi[1]];
    let limit = k_max * weight(&chi);
    let hits = |p: &[i64; 2]| {
        // p = kχ for some 1 ≤ k ≤ k_max
        let k = if chi[0] != 0 { p[0] / chi[0] } else { p[1] / chi[1] };
        k >= 1 && k <= k_max && p[0] == k * chi[0] && p[1] == k * chi[1]
    };
    if weight(&base) > limit {
        return false;
    }
    let mut seen: HashSet<[i64; 2]> = HashSet::from([base]);
    let mut stack = vec![base];
    while let Some(p) = stack.pop() {
        if hits(&p) {
            return true;
        }
        for g in &gens {
            let q = [p[0] + g[0], p[1] + g[1]];
            if weight(&q) <= limit && seen.insert(q) {
                stack.push(q);
            }
        }
    }
    false
}

/// An integer functional positive on every column.
fn positive_functional(cols: &[DivisorClass]) -> Option<[i64; 2]> {
    for b in 1..=64i64 {
        for a in -b..=b {
            for f in [[a, b], [b, a], [a, -b], [-b, a]] {
                if cols.iter().all(|c| c[0] * f[0] + c[1] * f[1] > 0) {
                    return Some(f);
                }
            }
        }
    }
    None
}

fn supports_at(w: &WeightSystem, chi: &DivisorClass, bound: i64) -> Result<Supports, GitError> {
    let n = w.len();
    if n > MAX_GIT_VARS {
        return Err(GitError::TooManyVariables(n));
    }
    let func = positive_functional(w.columns()).ok_or(GitError::NotPointed)?;
    let k_max = bound / chi.coords().iter().map(|v| v.abs()).sum::<i64>();
    let mut degs: Vec<DivisorClass> = Vec::new();
    let class_of: Vec<usize> = w
        .columns()
        .iter()
        .map(|c| match degs.iter().position(|d| d == c) {
            Some(i) => i,
            None => {
                degs.push(c.clone());
                degs.len() - 1
            }
        })
        .collect();
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut good: Vec<u32> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let mut counts = vec![0usize; degs.len()];
        for v in 0..n {
            if mask & (1 << v) != 0 {
                counts[class_of[v]] += 1;
            }
        }
        let ok = *memo
            .entry(counts.clone())
            .or_insert_with(|| support_reaches(&degs, &counts, chi, k_max, &func));
        if ok {
            good.push(mask);
        }
    }
    let minimal: BTreeSet<Vec<usize>> = good
        .iter()
        .filter(|&&m| !good.iter().any(|&o| o != m && o & m == o))
        .map(|&m| (0..n).filter(|v| m & (1 << v) != 0).collect())
        .collect();
    let mut out: Supports = minimal.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

/// Minimal squarefree generators of the irrelevant ideal `B_χ`, from all
/// monomials of degree `kχ` with `k·|χ|₁ ≤ degree_bound`. The result must
/// agree with the one at twice the bound.
pub fn irrelevant_ideal(w: &WeightSystem, chi: &DivisorClass, degree_bound: i64) -> Result<Supports, GitError> {
    if chi.rank() != 2 {
        return Err(GitError::NotRankTwo);
    }
    if chi.is_zero() {
        return Err(GitError::ZeroCharacter);
    }
    if !w.support()?.contains(chi)? {
        return Err(GitError::OutsideSupport(chi.clone()));
    }
    let a = supports_at(w, chi, degree_bound)?;
    let b = supports_at(w, chi, 2 * degree_bound)?;
    if a != b {
        return Err(GitError::NotStable {
            bound: degree_bound,
            doubled: 2 * degree_bound,
        });
    }
    Ok(a)
}

/// Generators as monomial strings such as `x0*z1`.
pub fn support_names(w: &WeightSystem, supports: &Supports) -> Vec<String> {
    supports
        .iter()
        .map(|s| s.iter().map(|&v| w.names()[v].as_str()).collect::<Vec<_>>().join("*"))
        .collect()
}

/// Minimal generators of the intersection of two squarefree monomial ideals.
pub fn monomial_ideal_intersection(a: &Supports, b: &Supports) -> Supports {
    let mut lcms: Vec<Vec<usize>> = Vec::new();
    for s in a {
        for t in b {
            let u: BTreeSet<usize> = s.iter().chain(t).copied().collect();
            lcms.push(u.into_iter().collect());
        }
    }
    let is_sub = |s: &Vec<usize>, t: &Vec<usize>| s.iter().all(|v| t.contains(v));
    let mut out: Supports = Vec::new();
    for (i, s) in lcms.iter().enumerate() {
        let dominated = lcms
            .iter()
            .enumerate()
            .any(|(j, t)| is_sub(t, s) && (t.len() < s.len() || (t == s && j < i)));
        if !dominated {
            out.push(s.clone());
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// A chamber or wall of the fan with its irrelevant ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitChamber {
    pub label: String,
    pub cone: RationalCone,
    /// Character used for the computation: sum of the bounding rays, or the wall ray.
    pub character: DivisorClass,
    pub irrelevant: Vec<String>,
    #[serde(skip)]
    pub supports: Supports,
}

impl fmt::Display for GitChamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} B = ({})", self.label, self.cone, self.irrelevant.join(", "))
    }
}

/// Every chamber and wall, with irrelevant ideals at the default bound
/// unless one is given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitReport {
    pub weights: WeightSystem,
    pub chambers: Vec<GitChamber>,
    pub walls: Vec<GitChamber>,
}

pub fn git_quotients(w: &WeightSystem, bound: Option<i64>) -> Result<GitReport, GitError> {
    let fan = chamber_fan(w)?;
    let entry = |label: String, cone: RationalCone, chi: DivisorClass| -> Result<GitChamber, GitError> {
        let supports = irrelevant_ideal(w, &chi, bound.unwrap_or_else(|| w.default_bound(&chi)))?;
        Ok(GitChamber {
            label,
            cone,
            irrelevant: support_names(w, &supports),
            character: chi,
            supports,
        })
    };
    let chambers = fan
        .chambers
        .iter()
        .enumerate()
        .map(|(i, c)| entry(chamber_label(i), c.clone(), &c.rays()[0] + &c.rays()[1]))
        .collect::<Result<_, _>>()?;
    let walls = fan
        .walls
        .iter()
        .enumerate()
        .map(|(i, r)| entry(wall_label(i), cone_from_rays(std::slice::from_ref(r))?, r.clone()))
        .collect::<Result<_, _>>()?;
    Ok(GitReport {
        weights: w.clone(),
        chambers,
        walls,
    })
}

/// Codimension of `(x_0,…,x_m) ∩ (y_0,…,y_n)` in `k[x, y]`.
pub fn irr_codim(m: usize, n: usize) -> usize {
    m.min(n) + 1
}

/// Whether the irrelevant ideal of `Pᵐ × Pⁿ` has codimension at least 3.
pub fn irr_codim_at_least_three(m: usize, n: usize) -> bool {
    irr_codim(m, n) >= 3
}

/// [`irr_codim`] recomputed by a Gröbner basis of the ideal `(x_i y_j)`.
pub fn irr_codim_groebner(m: usize, n: usize) -> Result<usize, GitError> {
    let amb = AmbientProduct::new(vec![m, n])?;
    let ctx = ambient_context(&amb);
    let gens: Vec<Poly> = (0..=m)
        .flat_map(|i| (0..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut e = vec![0u32; ctx.len()];
            e[i] = 1;
            e[m + 1 + j] = 1;
            Poly::monomial(&ctx, Monomial::new(e), Scalar::one())
        })
        .collect();
    Ok(ideal_codim(&IdealBasis::new(&ctx, gens)?, &Budget::default())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.to_vec())
    }

    /// Generators `{a_i b_j}` over named blocks.
    fn products(w: &WeightSystem, a: char, b: char) -> BTreeSet<Vec<usize>> {
        let idx = |p: char| -> Vec<usize> { (0..w.len()).filter(|&i| w.names()[i].starts_with(p)).collect() };
        idx(a)
            .iter()
            .flat_map(|&i| {
                idx(b)
                    .into_iter()
                    .map(move |j| if i < j { vec![i, j] } else { vec![j, i] })
            })
            .collect()
    }

    fn set(s: &Supports) -> BTreeSet<Vec<usize>> {
        s.iter().cloned().collect()
    }

    #[test]
    fn standard_columns() {
        let w = WeightSystem::standard(3, 2, 2);
        let count = |v: &[i64]| w.columns().iter().filter(|c| **c == dc(v)).count();
        assert_eq!((count(&[1, 0]), count(&[0, 1]), count(&[-1, 2])), (2, 4, 2));
        assert_eq!(
            WeightSystem::standard(3, 2, 1)
                .columns()
                .iter()
                .filter(|c| c[0] < 0)
                .count(),
            1
        );
        let fan = chamber_fan(&w).unwrap();
        assert!(fan.walls.contains(&dc(&[0, 2]).primitive()));
    }

    #[test]
    fn fan_examples() {
        let fan = chamber_fan(&WeightSystem::standard(3, 2, 2)).unwrap();
        assert_eq!(fan.chambers.len(), 2);
        assert_eq!(fan.chambers[0], cone_from_rays(&[dc(&[1, 0]), dc(&[0, 1])]).unwrap());
        assert_eq!(fan.chambers[1], cone_from_rays(&[dc(&[0, 1]), dc(&[-1, 2])]).unwrap());
        assert_eq!(fan.walls, vec![dc(&[0, 1])]);

        let single = weight_system_of(&CoxPresentation::two_factor(2, 3, 2, 2)).unwrap();
        let fan = chamber_fan(&single).unwrap();
        assert_eq!((fan.chambers.len(), fan.walls.len()), (1, 0));

        let line = WeightSystem::new(vec![dc(&[1, 1]), dc(&[2, 2])], vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(chamber_fan(&line), Err(GitError::Degenerate));
        assert!(WeightSystem::new(vec![dc(&[0, 0])], vec!["a".into()]).is_err());
    }

    #[test]
    fn chamber_count_is_ray_count_minus_one() {
        for n in 2..=3 {
            for e in 1..=3 {
                for d in 1..=3 {
                    let w = WeightSystem::standard(n, e, d);
                    let fan = chamber_fan(&w).unwrap();
                    assert_eq!(fan.chambers.len(), 2);
                    assert_eq!(fan.walls.len(), 1);
                }
            }
        }
    }

    #[test]
    fn chamber_ideals_match_stated_intersections() {
        for n in 2..=3 {
            for e in 1..=3 {
                for d in 1..=3 {
                    let w = WeightSystem::standard(n, e, d);
                    let b = irrelevant_ideal(&w, &dc(&[1, 1]), w.default_bound(&dc(&[1, 1]))).unwrap();
                    let mut expect = products(&w, 'x', 'y');
                    expect.extend(products(&w, 'x', 'z'));
                    assert_eq!(set(&b), expect, "B for ({n},{e},{d})");

                    let chi = dc(&[-1, 2 * e as i64]);
                    let bp = irrelevant_ideal(&w, &chi, w.default_bound(&chi)).unwrap();
                    let mut expect = products(&w, 'x', 'z');
                    expect.extend(products(&w, 'y', 'z'));
                    assert_eq!(set(&bp), expect, "B+ for ({n},{e},{d})");
                }
            }
        }
    }

    #[test]
    fn wall_ideal_contains_intersection() {
        let w = WeightSystem::standard(3, 2, 2);
        let r = git_quotients(&w, None).unwrap();
        let wall = &r.walls[0].supports;
        let meet = monomial_ideal_intersection(&r.chambers[0].supports, &r.chambers[1].supports);
        assert_eq!(set(&meet), products(&w, 'x', 'z'));
        // the wall ideal is (y_j, x_i z_k): it contains B ∩ B⁺ strictly
        let mut expect: BTreeSet<Vec<usize>> = (2..6).map(|j| vec![j]).collect();
        expect.extend(products(&w, 'x', 'z'));
        assert_eq!(set(wall), expect);
    }

    #[test]
    fn ideal_errors() {
        let w = WeightSystem::standard(3, 2, 2);
        assert_eq!(irrelevant_ideal(&w, &dc(&[0, 0]), 10), Err(GitError::ZeroCharacter));
        assert!(matches!(
            irrelevant_ideal(&w, &dc(&[0, -1]), 10),
            Err(GitError::OutsideSupport(_))
        ));
        // too small a bound cannot see x*z² in degree (-1, 4)
        assert!(matches!(
            irrelevant_ideal(&w, &dc(&[-1, 4]), 4),
            Err(GitError::NotStable { .. })
        ));
    }

    #[test]
    fn intersection_of_monomial_ideals() {
        let a = vec![vec![0], vec![1]];
        let b = vec![vec![1], vec![2]];
        assert_eq!(monomial_ideal_intersection(&a, &b), vec![vec![1], vec![0, 2]]);
    }

    #[test]
    fn irrelevant_codimension() {
        assert_eq!((irr_codim(2, 2), irr_codim_at_least_three(2, 2)), (3, true));
        assert_eq!((irr_codim(1, 5), irr_codim_at_least_three(1, 5)), (2, false));
        assert_eq!(irr_codim(4, 7), 5);
        for m in 1..=4 {
            for n in 1..=4 {
                assert_eq!(irr_codim_groebner(m, n).unwrap(), irr_codim(m, n), "({m},{n})");
                assert_eq!(irr_codim_at_least_three(m, n), m >= 2 && n >= 2);
            }
        }
    }
}
