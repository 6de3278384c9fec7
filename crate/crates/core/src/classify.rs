//! Mori-dream-space classification of hypersurfaces in products of
//! projective spaces.
//!
//! [`classify`] is a dispatch table over the ambient, the multidegree and the
//! generality level of the member. Every report carries the clause that
//! fired ([`CaseTag`]) and the hypotheses behind it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cohomology::CoxPresentation;
use crate::cones::{apply_map, cone_from_rays, orbit_chambers, ConeError, DivisorClass, LatticeMap, RationalCone};
use crate::hypersurface::{canonical_class, cox_ideal, involution_action, AmbientProduct, HyperError, Hypersurface};
use crate::polyalg::{ideal_codim, Budget, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("no Cox ring presentation: {0} is not a Mori dream space")]
    NotMds(CaseTag),
    #[error("case {0} has no known movable chamber decomposition")]
    NoDecomposition(CaseTag),
    #[error("unknown generality level {0:?}")]
    BadLevel(String),
    #[error("grid scans need n ≥ 3, got {0}")]
    GridNeedsThreefold(usize),
}

/// How special the member of the linear system may be. Ordered from
/// weakest to strongest assumption.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneralityLevel {
    /// Any member.
    Arbitrary,
    /// Outside a finite union of proper closed subsets.
    General,
    /// Outside a countable union of proper closed subsets.
    VeryGeneral,
}

impl GeneralityLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneralityLevel::Arbitrary => "arbitrary",
            GeneralityLevel::General => "general",
            GeneralityLevel::VeryGeneral => "very_general",
        }
    }
}

impl fmt::Display for GeneralityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GeneralityLevel {
    type Err = ClassifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "arbitrary" => Ok(GeneralityLevel::Arbitrary),
            "general" => Ok(GeneralityLevel::General),
            "very_general" => Ok(GeneralityLevel::VeryGeneral),
            _ => Err(ClassifyError::BadLevel(s.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MdsStatus {
    Yes,
    No,
    /// The conclusion holds for members at a stronger generality level.
    Conditional,
    OutOfClassification,
}

impl MdsStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MdsStatus::Yes => "yes",
            MdsStatus::No => "no",
            MdsStatus::Conditional => "conditional",
            MdsStatus::OutOfClassification => "out_of_classification",
        }
    }
}

impl fmt::Display for MdsStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The clause of the classification that produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// `Pᵐ × Pⁿ` with `m, n ≥ 2`.
    TwoFactorLefschetz,
    /// `P¹ × Pⁿ`, `d = 1`: blow-up of `Pⁿ` along a codimension-two complete intersection.
    P1Blowup,
    /// `P¹ × Pⁿ`, `1 < d < n`: one flip to `X⁺ ⊂ P^{d-1} × Pⁿ`.
    P1Flip,
    /// `P¹ × Pⁿ`, `d = n`: the second ray contracts.
    P1Contraction,
    /// `P¹ × Pⁿ`, `e = 1`, `d > n`: projective bundle over P¹.
    P1ProjectiveBundle,
    /// `P¹ × Pⁿ`, `d ≥ n + 1`, `e ≥ 2`.
    P1NonMds,
    SurfaceBlowup,
    SurfaceDoubleCover,
    SurfaceHirzebruch,
    SurfaceNonClosedEff,
    CyM0,
    CyM1,
    CyInfinitePsaut,
    OutOfClassification,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::TwoFactorLefschetz => "two-factor-lefschetz",
            CaseTag::P1Blowup => "p1-blowup",
            CaseTag::P1Flip => "p1-flip",
            CaseTag::P1Contraction => "p1-contraction",
            CaseTag::P1ProjectiveBundle => "p1-projective-bundle",
            CaseTag::P1NonMds => "p1-non-mds",
            CaseTag::SurfaceBlowup => "surface-blowup",
            CaseTag::SurfaceDoubleCover => "surface-double-cover",
            CaseTag::SurfaceHirzebruch => "surface-hirzebruch",
            CaseTag::SurfaceNonClosedEff => "surface-non-closed-eff",
            CaseTag::CyM0 => "cy-m0",
            CaseTag::CyM1 => "cy-m1",
            CaseTag::CyInfinitePsaut => "cy-infinite-psaut",
            CaseTag::OutOfClassification => "out-of-classification",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which model a movable chamber is the nef cone of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChamberLabel {
    /// `Nef(X)`.
    Nef,
    /// `φ*Nef(X⁺)` for the flip `φ: X ⇢ X⁺`.
    FlipPullback,
    /// Pullback of the nef cone of the other small modification of a projective bundle.
    SmallModification,
    /// `σ*Nef(X)` for the covering involution `σ`.
    InvolutionImage,
}

impl fmt::Display for ChamberLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChamberLabel::Nef => "Nef(X)",
            ChamberLabel::FlipPullback => "phi*Nef(X+)",
            ChamberLabel::SmallModification => "Nef(X')",
            ChamberLabel::InvolutionImage => "sigma*Nef(X)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub cone: RationalCone,
    pub label: ChamberLabel,
}

/// Picard rank, with the closed formula when it depends on the degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardRank {
    pub value: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub formula: Option<String>,
}

impl PicardRank {
    fn exact(value: u64) -> Self {
        PicardRank { value, formula: None }
    }

    fn formula(value: u64, formula: &str) -> Self {
        PicardRank {
            value,
            formula: Some(formula.into()),
        }
    }
}

impl fmt::Display for PicardRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.formula {
            Some(s) => write!(f, "{} ({s})", self.value),
            None => write!(f, "{}", self.value),
        }
    }
}

/// Everything the classification asserts about one `(ambient, degree, level)`.
///
/// Cones are absent when the Picard rank of `X` exceeds that of the ambient
/// or when nothing is proved at the given level. `eff`, `mov` may carry open
/// rays; `nef` never does.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub ambient: AmbientProduct,
    pub multidegree: DivisorClass,
    pub level: GeneralityLevel,
    pub mds_status: MdsStatus,
    pub case_tag: CaseTag,
    /// Weakest level at which the full conclusion of `case_tag` holds.
    pub required_level: GeneralityLevel,
    pub notes: Vec<String>,
    pub picard_rank: Option<PicardRank>,
    pub eff: Option<RationalCone>,
    pub mov: Option<RationalCone>,
    pub nef: Option<RationalCone>,
    pub mov_chambers: Vec<Chamber>,
    pub cox: Option<CoxPresentation>,
    pub canonical: DivisorClass,
    /// Open subcone of `Eff(X)` valid for every member.
    pub eff_lower_bound: Option<RationalCone>,
    pub calabi_yau: bool,
    /// Orbit sizes of `Nef(X)` under the covering involutions, word lengths `1..`.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub orbit_growth: Vec<usize>,
}

impl ClassificationReport {
    fn new(x: &Hypersurface, level: GeneralityLevel, case_tag: CaseTag) -> Self {
        ClassificationReport {
            ambient: x.ambient().clone(),
            multidegree: x.multidegree().clone(),
            level,
            mds_status: MdsStatus::OutOfClassification,
            case_tag,
            required_level: GeneralityLevel::General,
            notes: Vec::new(),
            picard_rank: None,
            eff: None,
            mov: None,
            nef: None,
            mov_chambers: Vec::new(),
            cox: None,
            canonical: canonical_class(x.ambient(), x.multidegree()),
            eff_lower_bound: None,
            calabi_yau: false,
            orbit_growth: Vec::new(),
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// A Mori dream space conclusion, proved for general members.
    fn mds(&mut self) {
        self.required_level = GeneralityLevel::General;
        if self.level >= GeneralityLevel::General {
            self.mds_status = MdsStatus::Yes;
        } else {
            self.mds_status = MdsStatus::Conditional;
            self.note("Mori dream space for a general member; a special member may differ");
        }
    }

    /// A negative conclusion proved for very general members. Returns whether
    /// it applies at the report's level.
    fn non_mds_very_general(&mut self) -> bool {
        self.required_level = GeneralityLevel::VeryGeneral;
        if self.level >= GeneralityLevel::VeryGeneral {
            self.mds_status = MdsStatus::No;
            true
        } else {
            self.mds_status = MdsStatus::OutOfClassification;
            self.note("not a Mori dream space for a very general member; open at this level, bounds only");
            false
        }
    }

    fn set_cones(&mut self, eff: RationalCone, mov: RationalCone, nef: RationalCone) {
        self.eff = Some(eff);
        self.mov = Some(mov);
        self.nef = Some(nef);
    }

    /// Whether the status asserts finite generation.
    pub fn is_mds(&self) -> bool {
        self.mds_status == MdsStatus::Yes
    }
}

fn dc(v: &[i64]) -> DivisorClass {
    DivisorClass::new(v.to_vec())
}

fn cone2(a: &[i64], b: &[i64]) -> Result<RationalCone, ConeError> {
    cone_from_rays(&[dc(a), dc(b)])
}

fn chamber(cone: RationalCone, label: ChamberLabel) -> Chamber {
    Chamber { cone, label }
}

/// Classifies `X ⊂ ambient` of the given multidegree at a generality level.
pub fn classify(
    ambient: &AmbientProduct,
    multidegree: &DivisorClass,
    level: GeneralityLevel,
) -> Result<ClassificationReport, ClassifyError> {
    let x = Hypersurface::new(ambient.clone(), multidegree.clone())?;
    let dims = ambient.dims();
    if let [n, 1] = dims {
        if *n >= 2 {
            let swapped = Hypersurface::new(AmbientProduct::p1_pn(*n), dc(&[multidegree[1], multidegree[0]]))?;
            let inner = classify_p1_pn(&swapped, level)?;
            return swap_report(inner, &x);
        }
    }
    if let [m, n] = dims {
        if *m >= 2 && *n >= 2 {
            return two_factor(&x, level);
        }
    }
    if ambient.p1_factor().is_some_and(|n| n >= 2) {
        return classify_p1_pn(&x, level);
    }
    if canonical_class(ambient, multidegree).is_zero() && x.dim() >= 3 && ambient.rank() >= 2 {
        return calabi_yau(&x, level);
    }
    Ok(out_of_classification(&x, level))
}

fn two_factor(x: &Hypersurface, level: GeneralityLevel) -> Result<ClassificationReport, ClassifyError> {
    let (m, n) = (x.ambient().dims()[0], x.ambient().dims()[1]);
    let (d, e) = (x.multidegree()[0] as usize, x.multidegree()[1] as usize);
    let mut r = ClassificationReport::new(x, level, CaseTag::TwoFactorLefschetz);
    r.mds_status = MdsStatus::Yes;
    r.required_level = GeneralityLevel::Arbitrary;
    r.note(
        "irrelevant ideal of the ambient has codimension at least 3, so Pic and the Cox ring restrict from the ambient",
    );
    r.picard_rank = Some(PicardRank::exact(2));
    let q = RationalCone::orthant(2);
    r.set_cones(q.clone(), q.clone(), q.clone());
    r.mov_chambers = vec![chamber(q, ChamberLabel::Nef)];
    r.cox = Some(CoxPresentation::two_factor(m, n, d, e));
    r.calabi_yau = r.canonical.is_zero();
    Ok(r)
}

fn classify_p1_pn(x: &Hypersurface, level: GeneralityLevel) -> Result<ClassificationReport, ClassifyError> {
    let (n, d, e) = x.p1_family().ok_or(HyperError::NotP1Family)?;
    if n == 2 {
        return surface(x, level, d, e);
    }
    let (di, ei, ni) = (d as i64, e as i64, n as i64);
    let q = RationalCone::orthant(2);
    let lower = subcone_lower_bound(x.ambient(), x.multidegree())?;
    let mut r = ClassificationReport::new(x, level, CaseTag::OutOfClassification);
    r.picard_rank = Some(PicardRank::exact(2));
    r.eff_lower_bound = Some(lower);
    r.calabi_yau = r.canonical.is_zero();
    if e == 1 && d > n {
        r.case_tag = CaseTag::P1ProjectiveBundle;
        r.mds();
        r.note("a P^(n-1)-bundle over P^1, hence toric");
        let (qd, rem) = (di / ni, di % ni);
        let nef = cone2(&[1, 0], &[-qd, 1])?;
        let eff = if rem == 0 {
            nef.clone()
        } else {
            cone2(&[1, 0], &[-qd - 1, 1])?
        };
        if rem >= 2 {
            let other = cone2(&[-qd, 1], &[-qd - 1, 1])?;
            r.mov_chambers = vec![
                chamber(nef.clone(), ChamberLabel::Nef),
                chamber(other, ChamberLabel::SmallModification),
            ];
            r.set_cones(eff.clone(), eff, nef);
        } else {
            r.mov_chambers = vec![chamber(nef.clone(), ChamberLabel::Nef)];
            r.set_cones(eff, nef.clone(), nef);
        }
        r.note(format!(
            "splitting type of the bundle is balanced: {rem} summands of degree {} and {} of degree {qd}",
            qd + 1,
            ni - rem
        ));
        return Ok(r);
    }
    let flipped = cone2(&[1, 0], &[-1, ei])?;
    if d == 1 {
        r.case_tag = CaseTag::P1Blowup;
        r.mds();
        r.note(
            "blow-up of P^n along a complete intersection of two degree-e hypersurfaces; exceptional divisor eH2 - H1",
        );
        r.set_cones(flipped, q.clone(), q.clone());
        r.mov_chambers = vec![chamber(q, ChamberLabel::Nef)];
        r.cox = Some(CoxPresentation::p1_family(n, d, e));
    } else if d < n {
        r.case_tag = CaseTag::P1Flip;
        r.mds();
        r.note("X is a small modification of X+ in P^(d-1) x P^n; Mov(X) = Nef(X) ∪ phi*Nef(X+)");
        r.set_cones(flipped.clone(), flipped, q.clone());
        r.mov_chambers = vec![
            chamber(q, ChamberLabel::Nef),
            chamber(cone2(&[0, 1], &[-1, ei])?, ChamberLabel::FlipPullback),
        ];
        r.cox = Some(CoxPresentation::p1_family(n, d, e));
    } else if d == n {
        r.case_tag = CaseTag::P1Contraction;
        r.mds();
        r.note("eH2 - H1 is base-point free and defines a divisorial contraction");
        r.set_cones(flipped.clone(), flipped.clone(), flipped.clone());
        r.mov_chambers = vec![chamber(flipped, ChamberLabel::Nef)];
        r.cox = Some(CoxPresentation::p1_family(n, d, e));
    } else {
        r.case_tag = CaseTag::P1NonMds;
        if r.non_mds_very_general() {
            let nef = cone2(&[1, 0], &[-di, ni * ei])?;
            let ray = dc(&[-di, ni * ei]);
            r.note("neH2 - dH1 is nef with no effective multiple: Eff(X) is not closed");
            r.set_cones(nef.with_open(std::slice::from_ref(&ray)), nef.with_open(&[ray]), nef);
        }
    }
    Ok(r)
}

fn surface(
    x: &Hypersurface,
    level: GeneralityLevel,
    d: usize,
    e: usize,
) -> Result<ClassificationReport, ClassifyError> {
    let (di, ei) = (d as i64, e as i64);
    let mut r = ClassificationReport::new(x, level, CaseTag::OutOfClassification);
    // K = (d-2)H1 + (e-3)H2 with H1² = 0, H1·H2 = e, H2² = d on X;
    // rational cases have ρ = 10 - K²
    let (a, b) = (di - 2, ei - 3);
    let k2 = 2 * a * b * ei + b * b * di;
    if e == 1 {
        r.case_tag = CaseTag::SurfaceHirzebruch;
        r.mds();
        r.note("X is a Hirzebruch surface");
        r.picard_rank = Some(PicardRank::exact(2));
        let (qd, rem) = (di / 2, di % 2);
        let nef = cone2(&[1, 0], &[-qd, 1])?;
        let eff = if rem == 0 {
            nef.clone()
        } else {
            cone2(&[1, 0], &[-qd - 1, 1])?
        };
        r.set_cones(eff, nef.clone(), nef.clone());
        r.mov_chambers = vec![chamber(nef, ChamberLabel::Nef)];
        return Ok(r);
    }
    match d {
        1 => {
            r.case_tag = CaseTag::SurfaceBlowup;
            r.picard_rank = Some(PicardRank::formula((e * e + 1) as u64, "e^2+1"));
            r.note("blow-up of P^2 in the e^2 base points of a pencil of degree-e curves");
            if e <= 2 {
                r.mds();
                r.note("del Pezzo surface");
            } else if r.non_mds_very_general() {
                r.note("infinitely many (-1)-curves");
            }
        }
        2 => {
            r.case_tag = CaseTag::SurfaceDoubleCover;
            r.mds();
            r.note(format!(
                "double cover of P^2 branched along a smooth curve of degree {}",
                2 * e
            ));
            if e >= 3 {
                r.required_level = GeneralityLevel::VeryGeneral;
                r.picard_rank = Some(PicardRank::exact(2));
                let c = cone2(&[1, 0], &[-1, ei])?;
                r.set_cones(c.clone(), c.clone(), c.clone());
                r.mov_chambers = vec![chamber(c, ChamberLabel::Nef)];
                r.cox = Some(CoxPresentation::p1_family(2, d, e));
                if level < GeneralityLevel::VeryGeneral {
                    r.note("Picard rank 2 and the cone data need a very general member");
                }
            } else {
                r.picard_rank = Some(PicardRank::formula((10 - k2) as u64, "10-K^2"));
                r.note("del Pezzo surface of degree 2; cones live in rank 8 and are omitted");
            }
        }
        _ => {
            r.case_tag = CaseTag::SurfaceNonClosedEff;
            if e == 2 {
                r.picard_rank = Some(PicardRank::formula((10 - k2) as u64, "10-K^2"));
                r.note("rational surface; Picard rank exceeds 2 and cones are omitted");
            } else {
                r.picard_rank = Some(PicardRank::exact(2));
            }
            if r.non_mds_very_general() {
                r.note("the effective cone is not closed");
                if e >= 3 {
                    let ray = dc(&[-di, 2 * ei]);
                    let nef = cone2(&[1, 0], &[-di, 2 * ei])?;
                    r.set_cones(nef.with_open(std::slice::from_ref(&ray)), nef.with_open(&[ray]), nef);
                    r.note("the boundary ray 2eH2 - dH1 is nef but not semiample");
                }
            }
        }
    }
    Ok(r)
}

fn calabi_yau(x: &Hypersurface, level: GeneralityLevel) -> Result<ClassificationReport, ClassifyError> {
    let amb = x.ambient();
    let rank = amb.rank();
    let p1: Vec<usize> = (0..rank).filter(|&i| amb.dims()[i] == 1).collect();
    let nef = RationalCone::orthant(rank);
    let mut r = ClassificationReport::new(x, level, CaseTag::CyM0);
    r.calabi_yau = true;
    r.picard_rank = Some(PicardRank::exact(rank as u64));
    r.nef = Some(nef.clone());
    r.note("nef cone equals the nef cone of the ambient");
    match p1.len() {
        0 => {
            r.mds();
            r.eff = Some(nef.clone());
            r.mov = Some(nef.clone());
            r.mov_chambers = vec![chamber(nef, ChamberLabel::Nef)];
        }
        1 => {
            r.case_tag = CaseTag::CyM1;
            r.mds();
            let sigma = involution_action(amb, x.multidegree(), p1[0])?;
            let image = apply_map(&sigma, &nef)?;
            let all: Vec<DivisorClass> = nef.rays().iter().chain(image.rays()).cloned().collect();
            let eff = cone_from_rays(&all)?;
            r.eff = Some(eff.clone());
            r.mov = Some(eff);
            r.mov_chambers = vec![
                chamber(nef, ChamberLabel::Nef),
                chamber(image, ChamberLabel::InvolutionImage),
            ];
            r.note("Eff(X) = Mov(X) = Nef(X) ∪ sigma*Nef(X) for the covering involution sigma");
        }
        _ => {
            r.case_tag = CaseTag::CyInfinitePsaut;
            r.required_level = GeneralityLevel::General;
            r.mds_status = if level >= GeneralityLevel::General {
                MdsStatus::No
            } else {
                MdsStatus::Conditional
            };
            let gens: Vec<LatticeMap> = p1
                .iter()
                .map(|&f| involution_action(amb, x.multidegree(), f))
                .collect::<Result<_, _>>()?;
            r.orbit_growth = (1..=6)
                .map(|len| orbit_chambers(&gens, &nef, len).map(|o| o.len()))
                .collect::<Result<_, _>>()?;
            r.note("PsAut(X)^* is infinite; the movable cone is not rational polyhedral");
            if level < GeneralityLevel::General {
                r.note("proved for smooth members");
            }
        }
    }
    Ok(r)
}

fn out_of_classification(x: &Hypersurface, level: GeneralityLevel) -> ClassificationReport {
    let mut r = ClassificationReport::new(x, level, CaseTag::OutOfClassification);
    r.calabi_yau = r.canonical.is_zero();
    if x.dim() >= 3 {
        r.picard_rank = Some(PicardRank::exact(x.ambient().rank() as u64));
    }
    r.note("outside the classified families; only the canonical class is reported");
    r
}

/// Re-expresses a report computed for `P¹ × Pⁿ` on `Pⁿ × P¹`.
fn swap_report(mut r: ClassificationReport, x: &Hypersurface) -> Result<ClassificationReport, ClassifyError> {
    let swap = LatticeMap::from_rows(vec![vec![0, 1], vec![1, 0]])?;
    let map = |c: &Option<RationalCone>| c.as_ref().map(|c| apply_map(&swap, c)).transpose();
    let flip = |v: &DivisorClass| dc(&[v[1], v[0]]);
    r.eff = map(&r.eff)?;
    r.mov = map(&r.mov)?;
    r.nef = map(&r.nef)?;
    r.eff_lower_bound = map(&r.eff_lower_bound)?;
    for ch in &mut r.mov_chambers {
        ch.cone = apply_map(&swap, &ch.cone)?;
    }
    if let Some(cox) = &mut r.cox {
        for b in &mut cox.blocks {
            b.degree = flip(&b.degree);
        }
        cox.relation_degrees = cox.relation_degrees.iter().map(flip).collect();
    }
    r.ambient = x.ambient().clone();
    r.multidegree = x.multidegree().clone();
    r.canonical = canonical_class(x.ambient(), x.multidegree());
    r.note("the P^1 factor is listed second; classes are in the given factor order");
    Ok(r)
}

/// The movable chambers with their models.
pub fn mov_chamber_decomposition(report: &ClassificationReport) -> Result<Vec<Chamber>, ClassifyError> {
    if report.mov.is_none() || report.mov_chambers.is_empty() {
        return Err(ClassifyError::NoDecomposition(report.case_tag));
    }
    Ok(report.mov_chambers.clone())
}

/// The Cox ring presentation, when one is known.
pub fn cox_descriptor(report: &ClassificationReport) -> Result<Option<CoxPresentation>, ClassifyError> {
    if report.mds_status == MdsStatus::No {
        return Err(ClassifyError::NotMds(report.case_tag));
    }
    Ok(report.cox.clone())
}

/// The open cone `R_{>0} H_1 + R_{>0} (neH_2 - dH_1)`, contained in `Eff(X)`
/// for every hypersurface of bidegree `(d,e)` in `P¹ × Pⁿ`. Its second ray
/// has top self-intersection 0.
pub fn subcone_lower_bound(
    ambient: &AmbientProduct,
    multidegree: &DivisorClass,
) -> Result<RationalCone, ClassifyError> {
    let n = ambient.p1_factor().ok_or(HyperError::NotP1Family)? as i64;
    Hypersurface::new(ambient.clone(), multidegree.clone())?;
    let rays = [dc(&[1, 0]), dc(&[-multidegree[0], n * multidegree[1]])];
    Ok(cone_from_rays(&rays)?.with_open(&rays))
}

/// Status of a very general member for `1 ≤ d ≤ d_max`, `1 ≤ e ≤ e_max`,
/// indexed `[d-1][e-1]`.
pub fn mds_bidegree_region(n: usize, d_max: usize, e_max: usize) -> Result<Vec<Vec<MdsStatus>>, ClassifyError> {
    if n < 3 {
        return Err(ClassifyError::GridNeedsThreefold(n));
    }
    let amb = AmbientProduct::p1_pn(n);
    (1..=d_max)
        .map(|d| {
            (1..=e_max)
                .map(|e| Ok(classify(&amb, &dc(&[d as i64, e as i64]), GeneralityLevel::VeryGeneral)?.mds_status))
                .collect()
        })
        .collect()
}

/// Outcome of checking that the Cox ideal is a complete intersection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KrullCertificate {
    pub generators: usize,
    pub relations: usize,
    pub codim: usize,
    pub krull_dimension: usize,
    /// `rank Pic(X) + dim X`.
    pub expected: usize,
}

impl KrullCertificate {
    pub fn is_complete_intersection(&self) -> bool {
        self.codim == self.relations
    }

    pub fn matches(&self) -> bool {
        self.is_complete_intersection() && self.krull_dimension == self.expected
    }
}

/// Computes the codimension of the Cox ideal of the fixture hypersurface
/// (`f_i = y_i^e` for `i ≤ n`) by a Gröbner basis.
pub fn certify_krull_dimension(
    n: usize,
    d: usize,
    e: usize,
    budget: &Budget,
) -> Result<KrullCertificate, ClassifyError> {
    let x = Hypersurface::fixture(d, e, n)?;
    let ideal = cox_ideal(&x)?;
    let generators = ideal.ctx().len();
    let relations = ideal.gens().len();
    let codim = ideal_codim(&ideal, budget)?;
    Ok(KrullCertificate {
        generators,
        relations,
        codim,
        krull_dimension: generators - codim.min(generators),
        expected: 2 + x.dim(),
    })
}
