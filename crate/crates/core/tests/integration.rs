//! Cross-module properties: classification against cohomology, flips against
//! sampling, and the command line against the library.

use coxcones::classify::{classify, mov_chamber_decomposition, ClassificationReport, GeneralityLevel, MdsStatus};
use coxcones::cli::{emit_report, run, Format};
use coxcones::cohomology::{h0_x, koszul_hilbert, CohomologyValue, CoxPresentation};
use coxcones::cones::{cone_union_2d, DivisorClass};
use coxcones::git::{chamber_fan, weight_system_of};
use coxcones::hypersurface::{flip_backward, flip_forward, lies_on, sample_point, AmbientProduct, Hypersurface};
use coxcones::polyalg::Modulus;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn dc(v: &[i64]) -> DivisorClass {
    DivisorClass::new(v.to_vec())
}

fn p1(n: usize, d: usize, e: usize) -> ClassificationReport {
    classify(
        &AmbientProduct::p1_pn(n),
        &dc(&[d as i64, e as i64]),
        GeneralityLevel::VeryGeneral,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mds_cones_are_nested(n in 3usize..=5, d in 1usize..=6, e in 1usize..=4) {
        let r = p1(n, d, e);
        prop_assume!(r.mds_status == MdsStatus::Yes);
        let (nef, mov, eff) = (r.nef.clone().unwrap(), r.mov.clone().unwrap(), r.eff.clone().unwrap());
        prop_assert!(mov.contains_cone(&nef).unwrap());
        prop_assert!(eff.contains_cone(&mov).unwrap());
        let chambers = mov_chamber_decomposition(&r).unwrap();
        let union = chambers.iter().skip(1).fold(chambers[0].cone.clone(), |acc, c| cone_union_2d(&acc, &c.cone).unwrap());
        prop_assert_eq!(union, mov);
    }

    #[test]
    fn cox_generators_span_mov(n in 3usize..=5, d in 2usize..=5, e in 2usize..=4) {
        prop_assume!(d <= n);
        let r = p1(n, d, e);
        let cox = r.cox.clone().unwrap();
        let eff = r.eff.clone().unwrap();
        for g in cox.generator_degrees() {
            prop_assert!(eff.contains(&g).unwrap(), "generator degree {} outside Eff", g);
        }
        // for 1 < d < n the GIT fan of the Cox weights is the Mov decomposition
        prop_assume!(d < n);
        let fan = chamber_fan(&weight_system_of(&cox).unwrap()).unwrap();
        let chambers: Vec<_> = mov_chamber_decomposition(&r).unwrap().into_iter().map(|c| c.cone).collect();
        prop_assert_eq!(fan.chambers, chambers);
    }

    #[test]
    fn koszul_counts_sections(n in 3usize..=4, d in 2usize..=4, e in 2usize..=3, a in -2i64..=6, b in -1i64..=6) {
        prop_assume!(d <= n);
        let x = Hypersurface::new(AmbientProduct::p1_pn(n), dc(&[d as i64, e as i64])).unwrap();
        let cl = dc(&[a, b]);
        let k = koszul_hilbert(&CoxPresentation::p1_family(n, d, e), &cl).unwrap();
        match h0_x(&x, &cl).unwrap() {
            CohomologyValue::Exact(h) => prop_assert_eq!(h, k),
            CohomologyValue::Interval { lo, hi } => prop_assert!(lo <= k && k <= hi),
        }
    }

    #[test]
    fn sampled_points_flip_back(seed in any::<u64>(), d in 2usize..=3, n in 3usize..=4) {
        let x = Hypersurface::fixture(d, 2, n).unwrap();
        let m = Modulus::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample_point(&x, &mut rng, m, 1000).unwrap();
        prop_assert!(lies_on(&x, &p).unwrap());
        prop_assert_eq!(flip_backward(&x, &flip_forward(&x, &p).unwrap()).unwrap(), p);
    }
}

fn json_of(args: &[&str]) -> Value {
    let out = run(args.iter().copied());
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn cli_classify_json_matches_library() {
    let v = json_of(&["classify", "--factors", "1,3", "--degree", "2,2", "--json"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["mds"], "yes");
    let lib = emit_report(
        &classify(&AmbientProduct::p1_pn(3), &dc(&[2, 2]), GeneralityLevel::General).unwrap(),
        Format::Json,
    );
    let lib: Value = serde_json::from_str(&lib).unwrap();
    assert_eq!(v["eff"], lib["eff"]);
    assert_eq!(v["mov_chambers"], lib["mov_chambers"]);
}

#[test]
fn cli_sampling_is_seeded() {
    let args = [
        "flip-eval",
        "--d",
        "2",
        "--e",
        "2",
        "--n",
        "3",
        "--samples",
        "5",
        "--seed",
        "7",
        "--json",
    ];
    assert_eq!(json_of(&args), json_of(&args));
    let other = [
        "flip-eval",
        "--d",
        "2",
        "--e",
        "2",
        "--n",
        "3",
        "--samples",
        "5",
        "--seed",
        "8",
        "--json",
    ];
    assert_ne!(json_of(&args), json_of(&other));
}

#[test]
fn cli_exit_codes() {
    assert_eq!(run(["classify", "--factors", "1,3"]).code, 2);
    assert_eq!(
        run(["hilbert", "--n", "3", "--d", "2", "--e", "2", "--mod", "10"]).code,
        2
    );
    let out = run([
        "flip-eval",
        "--d",
        "2",
        "--e",
        "2",
        "--n",
        "3",
        "--point",
        "1,0;0,0,0,1",
        "--json",
    ]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["error"]["kind"].is_string());
}
