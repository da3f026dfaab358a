//! Acceptance suite: one test per pipeline-level criterion, each
//! printing a single pass/fail line (run with `--nocapture` to see
//! them). Every tolerance here is zero: all identities are exact.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use mckay_core::ar_quiver::{
    ar_sequence, delta_classes, euler_pair, k_normalize, rank_degree, rphi, rphi_det, rphi_inverse,
    twist, verify_cg, window_vertices, HomEngine, KClass, MeshModule,
};
use mckay_core::mckay::AffineType;
use mckay_core::orientation::{connect_heights, reverse_at, standard_height};
use mckay_core::quiver_rep::{is_indecomposable, phi_object};
use mckay_core::root_lattice::{BilinearForm, RootVector};
use mckay_core::verify::{self, random_height, SplitMix64};
use mckay_core::{Check, Context};

const FIVE_FAMILIES: [&str; 5] = ["cyclic:3", "dihedral:3", "tetra", "octa", "icosa"];

fn ctx(spec: &str) -> &'static Context {
    static CACHE: OnceLock<Mutex<HashMap<String, &'static Context>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(spec.to_string())
        .or_insert_with(|| Box::leak(Box::new(Context::build(spec).unwrap())))
}

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {:02} {}: {} ({})",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        name,
        detail
    );
    assert!(pass, "criterion {:02} failed: {}", criterion, detail);
}

fn assert_checks(criterion: u32, name: &str, checks: &[Check], detail: String) {
    let fails: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
    let detail = if fails.is_empty() {
        detail
    } else {
        format!(
            "{} — first failure: {}: {}",
            detail, fails[0].name, fails[0].detail
        )
    };
    report(criterion, name, fails.is_empty(), &detail);
}

#[test]
fn criterion_01_character_engine() {
    let mut checks = Vec::new();
    let mut groups = 0;
    for n in 1..=8 {
        checks.extend(verify::suite_characters(ctx(&format!("cyclic:{}", n))).unwrap());
        groups += 1;
    }
    for n in 1..=6 {
        checks.extend(verify::suite_characters(ctx(&format!("dihedral:{}", n))).unwrap());
        groups += 1;
    }
    for spec in ["tetra", "octa", "icosa"] {
        checks.extend(verify::suite_characters(ctx(spec)).unwrap());
        groups += 1;
    }
    assert_checks(
        1,
        "exact orthogonality and degree identities",
        &checks,
        format!("{} groups, {} checks", groups, checks.len()),
    );
}

#[test]
fn criterion_02_mckay_types() {
    let mut pass = true;
    let mut detail = String::new();
    let mut cases = Vec::new();
    for n in 1..=8usize {
        cases.push((format!("cyclic:{}", n), AffineType::A(2 * n - 1)));
    }
    for n in 2..=6usize {
        cases.push((format!("dihedral:{}", n), AffineType::D(n + 2)));
    }
    cases.push(("tetra".into(), AffineType::E(6)));
    cases.push(("octa".into(), AffineType::E(7)));
    cases.push(("icosa".into(), AffineType::E(8)));
    for (spec, expect) in &cases {
        let c = ctx(spec);
        if c.graph.affine_type != *expect {
            pass = false;
            detail = format!("{} classified {}", spec, c.graph.affine_type);
        }
        let dims: Vec<i64> = c.graph.dims.iter().map(|&d| d as i64).collect();
        if c.graph.delta.coords != dims {
            pass = false;
            detail = format!("{} delta != dims", spec);
        }
    }
    report(
        2,
        "affine types and delta across families",
        pass,
        &if detail.is_empty() {
            format!("{} cases", cases.len())
        } else {
            detail
        },
    );
}

#[test]
fn criterion_03_mesh_oracle() {
    let mut pass = true;
    let mut pairs = 0usize;
    let mut detail = String::new();
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let engine = HomEngine::new(&c.table, &c.graph);
        for target in window_vertices(&c.graph, 0, 6) {
            let module = MeshModule::build(&c.graph, 0, 6, target).unwrap();
            for source in window_vertices(&c.graph, 0, 6) {
                pairs += 1;
                if module.dim(source).unwrap() != engine.hom_dim(source, target).unwrap() {
                    pass = false;
                    detail = format!("{}: {} -> {}", spec, source, target);
                }
            }
        }
    }
    report(
        3,
        "mesh-quotient dimensions equal character-engine hom dimensions",
        pass,
        &if detail.is_empty() {
            format!("{} ordered pairs", pairs)
        } else {
            detail
        },
    );
}

#[test]
fn criterion_04_ar_relations_and_unimodular_basis() {
    let mut pass = true;
    let mut detail = String::new();
    let mut heights_checked = 0;
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let engine = HomEngine::new(&c.table, &c.graph);
        let std_h = standard_height(&c.graph);
        let mut rng = SplitMix64::new(4242);
        let mut heights = vec![std_h.clone()];
        for _ in 0..3 {
            heights.push(random_height(c, &std_h, 2 * c.graph.n_vertices, &mut rng).unwrap());
        }
        for h in &heights {
            heights_checked += 1;
            for v in window_vertices(&c.graph, -5, 3) {
                let (l, m, r) = ar_sequence(&c.graph, v).unwrap();
                let rel = l.sub(&m).add(&r);
                if k_normalize(&c.graph, h, &rel)
                    .unwrap()
                    .iter()
                    .any(|&x| x != 0)
                {
                    pass = false;
                    detail = format!("{}: AR relation at {} survives", spec, v);
                }
            }
            let det = rphi_det(&engine, h).unwrap();
            if det.abs() != 1 {
                pass = false;
                detail = format!("{}: det = {}", spec, det);
            }
        }
    }
    report(
        4,
        "AR relations normalize to zero; basis-image matrices unimodular",
        pass,
        &if detail.is_empty() {
            format!("{} heights", heights_checked)
        } else {
            detail
        },
    );
}

#[test]
fn criterion_05_standard_height_images() {
    let mut pass = true;
    let mut detail = String::new();
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let engine = HomEngine::new(&c.table, &c.graph);
        let h = standard_height(&c.graph);
        let n = c.graph.n_vertices;
        for v in 0..n {
            if c.graph.parities[v] == 0 {
                let x = KClass::symbol(&c.graph, v, 0).unwrap();
                if rphi(&engine, &h, &x).unwrap() != RootVector::simple(n, v) {
                    pass = false;
                    detail = format!("{}: [X_{}] image", spec, v);
                }
            } else {
                let x = KClass::symbol(&c.graph, v, 1).unwrap();
                let mut expect = RootVector::simple(n, v);
                for (j, m) in c.graph.neighbors(v) {
                    expect = &expect + &RootVector::simple(n, j).scaled(m as i64);
                }
                if rphi(&engine, &h, &x).unwrap() != expect {
                    pass = false;
                    detail = format!("{}: [X_{}(1)] image", spec, v);
                }
                let y = KClass::symbol(&c.graph, v, -1).unwrap();
                if rphi(&engine, &h, &y).unwrap() != RootVector::simple(n, v).scaled(-1) {
                    pass = false;
                    detail = format!("{}: [X_{}(-1)] image", spec, v);
                }
            }
        }
    }
    report(
        5,
        "standard-height basis images match the closed form",
        pass,
        &if detail.is_empty() {
            "all five families".into()
        } else {
            detail
        },
    );
}

#[test]
fn criterion_06_reflection_intertwining() {
    let mut checks = Vec::new();
    for spec in FIVE_FAMILIES {
        // The coxeter suite contains the 20-random-height intertwining
        // sweep as its first check.
        let suite = verify::suite_coxeter(ctx(spec)).unwrap();
        checks.push(suite.into_iter().next().unwrap());
    }
    assert_checks(
        6,
        "lattice map intertwines reversals with reflections",
        &checks,
        "20 random heights per family".into(),
    );
}

#[test]
fn criterion_07_coxeter_square() {
    let mut pass = true;
    let mut detail = String::new();
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let engine = HomEngine::new(&c.table, &c.graph);
        let form = BilinearForm::from_graph(&c.graph);
        let std_h = standard_height(&c.graph);
        let mut rng = SplitMix64::new(777);
        let mut heights = vec![std_h.clone()];
        for _ in 0..3 {
            heights.push(random_height(c, &std_h, 2 * c.graph.n_vertices, &mut rng).unwrap());
        }
        for h in &heights {
            let word = mckay_core::orientation::coxeter_word(
                &c.graph,
                h,
                mckay_core::orientation::Dir::Plus,
            )
            .unwrap();
            for v in 0..c.graph.n_vertices {
                let x = KClass::symbol(&c.graph, v, h.values[v]).unwrap();
                let lhs = rphi(&engine, h, &twist(&x, -2).unwrap()).unwrap();
                let rhs = form.apply_word(&word, &rphi(&engine, h, &x).unwrap());
                if lhs != rhs {
                    pass = false;
                    detail = format!("{}: basis vertex {}", spec, v);
                }
            }
        }
    }
    report(
        7,
        "twist by -2 equals the Coxeter word through the lattice map",
        pass,
        &if detail.is_empty() {
            "standard + 3 random heights per family".into()
        } else {
            detail
        },
    );
}

#[test]
fn criterion_08_coxeter_power_translation() {
    let mut checks = Vec::new();
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let engine = HomEngine::new(&c.table, &c.graph);
        let h = standard_height(&c.graph);
        checks.extend(verify_cg(&engine, &h, 3).unwrap());
        checks.extend(verify::suite_cg(c).unwrap());
    }
    assert_checks(
        8,
        "C^g(x) = x - 2 rk(x) delta; rank-zero classes fixed",
        &checks,
        format!("{} checks across five families", checks.len()),
    );
}

#[test]
fn criterion_09_serre_duality() {
    let mut pass = true;
    let mut detail = String::new();
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let engine = HomEngine::new(&c.table, &c.graph);
        let vs = window_vertices(&c.graph, -3, 3);
        for &q in &vs {
            for &qp in &vs {
                if engine.ext_dim(q, qp).unwrap() != engine.hom_dim(qp.shifted(2), q).unwrap() {
                    pass = false;
                    detail = format!("{}: dimensions at {} {}", spec, q, qp);
                }
            }
        }
        let h = standard_height(&c.graph);
        let basis: Vec<KClass> = (0..c.graph.n_vertices)
            .map(|v| KClass::symbol(&c.graph, v, h.values[v]).unwrap())
            .collect();
        for x in &basis {
            for y in &basis {
                let lhs = euler_pair(&engine, x, y).unwrap();
                let rhs = -euler_pair(&engine, y, &twist(x, -2).unwrap()).unwrap();
                if lhs != rhs {
                    pass = false;
                    detail = format!("{}: pairing antisymmetry", spec);
                }
            }
        }
    }
    report(
        9,
        "Serre duality: ext(F, G(-2)) = hom(G, F) and <x,y> = -<y,Cx>",
        pass,
        &if detail.is_empty() {
            "height-6 windows, all basis pairs".into()
        } else {
            detail
        },
    );
}

#[test]
fn criterion_10_cycle_model_oracle() {
    let mut checks = Vec::new();
    for spec in ["cyclic:2", "cyclic:3", "cyclic:4"] {
        checks.extend(verify::suite_an(ctx(spec)).unwrap());
    }
    assert_checks(
        10,
        "closed-form cycle model: simples, reflections, Coxeter, classification",
        &checks,
        "n = 4, 6, 8".into(),
    );
}

#[test]
fn criterion_11_reflection_functors() {
    let mut checks = Vec::new();
    for spec in [
        "cyclic:2",
        "cyclic:3",
        "dihedral:2",
        "dihedral:3",
        "tetra",
        "octa",
    ] {
        checks.extend(verify::suite_bgp(ctx(spec), 2).unwrap());
    }
    assert_checks(
        11,
        "reflection functors realize real roots with exact dimension identities",
        &checks,
        checks
            .iter()
            .map(|c| c.detail.clone())
            .collect::<Vec<_>>()
            .join("; "),
    );
}

#[test]
fn criterion_12_hom_functor_objects() {
    let mut pass = true;
    let mut objects = 0usize;
    let mut detail = String::new();
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let engine = HomEngine::new(&c.table, &c.graph);
        let h = standard_height(&c.graph);
        for v in 0..c.graph.n_vertices {
            for k in [0i64, 2, 4] {
                let q = mckay_core::ar_quiver::ARVertex {
                    vertex: v,
                    level: h.values[v] + k,
                };
                // phi_object verifies dim_vector = rphi([X_q]) internally
                // and errors on mismatch.
                let rep = phi_object(&engine, &h, q).unwrap();
                objects += 1;
                if !is_indecomposable(&rep).unwrap() {
                    pass = false;
                    detail = format!("{}: {} decomposable", spec, q);
                }
            }
        }
    }
    report(
        12,
        "hom-functor objects indecomposable with lattice-image dimensions",
        pass,
        &if detail.is_empty() {
            format!("{} objects in height-4 bands", objects)
        } else {
            detail
        },
    );
}

#[test]
fn criterion_13_height_connectivity() {
    let mut pass = true;
    let mut detail = String::new();
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let std_h = standard_height(&c.graph);
        let mut rng = SplitMix64::new(1313);
        for _ in 0..100 {
            let a =
                random_height(c, &std_h, rng.below(2 * c.graph.n_vertices + 1), &mut rng).unwrap();
            let b =
                random_height(c, &std_h, rng.below(2 * c.graph.n_vertices + 1), &mut rng).unwrap();
            let steps = connect_heights(&c.graph, &a, &b).unwrap();
            if steps.len() as i64 != a.distance(&b) / 2 {
                pass = false;
                detail = format!("{}: step count off", spec);
            }
            let mut cur = a.clone();
            for (i, dir) in steps {
                cur = reverse_at(&c.graph, &cur, i, dir).unwrap();
            }
            if cur != b {
                pass = false;
                detail = format!("{}: endpoint mismatch", spec);
            }
        }
    }
    report(
        13,
        "height connectivity with exact d/2 step counts",
        pass,
        &if detail.is_empty() {
            "100 random pairs per family".into()
        } else {
            detail
        },
    );
}

// Supporting identities that the criteria lean on: the rank functional
// against the pairing and polarization of delta.
#[test]
fn supporting_rank_and_polarization() {
    for spec in FIVE_FAMILIES {
        let c = ctx(spec);
        let engine = HomEngine::new(&c.table, &c.graph);
        let (d0, _, delta) = delta_classes(&c.graph);
        let (rk, deg) = rank_degree(&c.graph, &delta);
        assert_eq!((rk, deg), (0, c.group.order as i64 / 2), "{}", spec);
        let h = standard_height(&c.graph);
        for v in 0..c.graph.n_vertices {
            let x = KClass::symbol(&c.graph, v, h.values[v]).unwrap();
            let (rk, _) = rank_degree(&c.graph, &x);
            assert_eq!(
                mckay_core::ar_quiver::sym_pair(&engine, &x, &d0).unwrap(),
                2 * rk,
                "{}",
                spec
            );
        }
        // The lattice map inverts exactly on delta.
        let img = rphi(&engine, &h, &delta).unwrap();
        assert_eq!(img, c.graph.delta);
        let back = rphi_inverse(&engine, &h, &img).unwrap();
        assert_eq!(
            k_normalize(&c.graph, &h, &back).unwrap(),
            k_normalize(&c.graph, &h, &delta).unwrap()
        );
    }
}
