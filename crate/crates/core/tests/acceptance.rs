//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use sheafcalc::chow::{self, ch_to_chern, chern_to_ch, hrr_chi_twisted, twist_chern};
use sheafcalc::cohomology::{
    binom3_plus, bott_h, generic_dist_cohom, les_chase, line_table, sqc_f_chase, DimEntry,
};
use sheafcalc::dist::{
    conn_components, dist_chern, dist_chern_via_sequence, generic_h2_suggestion, singular_length,
    ComponentCount, DistributionProfile,
};
use sheafcalc::modulispec::{
    curve_family, ext2, global_gen_resolution, moduli_report, normalize, spectrum_point,
};
use sheafcalc::sheafdsl::{self, is_valid_identifier, parse, Env, SheafExpr};
use sheafcalc::{ChernData, ThreefoldData};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn c1_chern_triples() -> Check {
    for d in 0..=50i64 {
        let p = DistributionProfile::p3_degree(d, true);
        let want = ChernData::new(2, 2 - d, d * d + 2, d * d * d + 2 * d * d + 2 * d);
        let twist = dist_chern(&p).map_err(err)?;
        let seq = dist_chern_via_sequence(&p).map_err(err)?;
        ensure!(
            twist == want,
            "d = {d}: twist route gives {twist}, want {want}"
        );
        ensure!(
            seq == want,
            "d = {d}: sequence route gives {seq}, want {want}"
        );
        let len = singular_length(&p).map_err(err)?;
        ensure!(len as i64 == want.n3, "d = {d}: length {len}");
    }
    Ok(())
}

fn c2_moduli_dimension() -> Check {
    for d in (0..=1).chain(3..=50i64) {
        let lhs = bott_h(1, 0, d + 2) as i64 - 1;
        ensure!(
            lhs == (d + 1) * (d + 3) * (d + 4) / 2 - 1,
            "d = {d}: bott gives {lhs}"
        );
        let rhs = 6 * d * d + 8 * d + 5 + d * (d - 1) * (d - 3) / 2;
        ensure!(lhs == rhs, "d = {d}: {lhs} != {rhs}");
        let r = moduli_report(d).map_err(err)?;
        ensure!(
            r.dim_component == lhs && r.ext1 == rhs,
            "d = {d}: report {r:?}"
        );
        ensure!(r.ext2 == ext2(d), "d = {d}: ext2 {}", r.ext2);
    }
    Ok(())
}

fn c3_cohomology_grid() -> Check {
    let x = ThreefoldData::p3();
    for d in 0..=6i64 {
        let (lo, hi) = (d - 4, 2 * d + 3);
        let (_, _, chased) = sqc_f_chase(d, lo..=hi).map_err(err)?;
        let dsl = sheafdsl::cohom_of(&SheafExpr::generic_distribution(d), &x, &Env::new(), lo, hi)
            .map_err(err)?;
        for p in lo..=hi {
            let col = generic_dist_cohom(d, p).map_err(err)?;
            let h0 = bott_h(1, 0, p + 2 - d) - binom3_plus(p - 2 * d + 3);
            let expected =
                [h0, u64::from(p == d - 2), binom3_plus(2 * d - p - 1), 0].map(DimEntry::Known);
            ensure!(
                col == expected,
                "d = {d}, p = {p}: closed form {col:?}, expected {expected:?}"
            );
            ensure!(
                chased.column(p) == expected,
                "d = {d}, p = {p}: chase {:?}",
                chased.column(p)
            );
            ensure!(
                dsl.column(p) == expected,
                "d = {d}, p = {p}: expression {:?}",
                dsl.column(p)
            );
            if p >= 2 * d - 3 {
                ensure!(
                    col[2] == DimEntry::Known(0),
                    "d = {d}, p = {p}: h2 = {}",
                    col[2]
                );
            }
        }
        ensure!(
            generic_dist_cohom(d, d - 2).map_err(err)?[1] == DimEntry::Known(1),
            "d = {d}: h1(F(d-2)) != 1"
        );
    }
    Ok(())
}

fn c4_bott_serre_hrr() -> Check {
    let x = ThreefoldData::p3();
    let omega = [
        ChernData::line(0),
        ChernData::cotangent(&x),
        twist_chern(&ChernData::tangent(&x), -4, &x).map_err(err)?,
        ChernData::line(-4),
    ];
    for p in 0..=3u8 {
        ensure!(bott_h(p, p, 0) == 1, "h^{p}(Omega^{p}) != 1");
        for t in -15..=15i64 {
            let mut alt = 0i64;
            for q in 0..=3u8 {
                let h = bott_h(p, q, t);
                ensure!(
                    h == bott_h(3 - p, 3 - q, -t),
                    "Serre fails at ({p}, {q}, {t})"
                );
                alt += if q % 2 == 0 { h as i64 } else { -(h as i64) };
            }
            let chi = hrr_chi_twisted(&omega[p as usize], t, &x).map_err(err)?;
            ensure!(alt == chi, "chi(Omega^{p}({t})): bott {alt}, hrr {chi}");
        }
    }
    Ok(())
}

fn c5_special_cases() -> Check {
    let d0 = moduli_report(0).map_err(err)?;
    ensure!(
        d0.chern == ChernData::new(2, 2, 2, 0),
        "d = 0 chern {}",
        d0.chern
    );
    ensure!(
        generic_dist_cohom(0, 0).map_err(err)?[0] == DimEntry::Known(5),
        "h0(F) != 5 for d = 0"
    );
    ensure!(
        global_gen_resolution(0).map_err(err)?.h0_fd == 5,
        "d = 0 resolution"
    );
    let d1 = moduli_report(1).map_err(err)?;
    ensure!(
        d1.normalized.triple() == [-1, 3, 5],
        "d = 1 normalized {}",
        d1.normalized
    );
    ensure!(
        d1.dim_component == 19,
        "d = 1 dimension {}",
        d1.dim_component
    );
    let d2 = moduli_report(2).map_err(err)?;
    ensure!(
        (d2.dim_component, d2.family_dim) == (45, 44),
        "d = 2: {} / {}",
        d2.dim_component,
        d2.family_dim
    );
    Ok(())
}

fn c6_curve_family() -> Check {
    for d in 1..=50i64 {
        let c = curve_family(d).map_err(err)?;
        let deg = d * d + 2 * d + 2;
        ensure!(c.degree == deg, "d = {d}: degree {}", c.degree);
        ensure!(c.genus == (d - 1) * deg + 1, "d = {d}: genus {}", c.genus);
        ensure!(c.points == d * deg, "d = {d}: points {}", c.points);
        ensure!(c.family_dim == 5, "d = {d}: family {}", c.family_dim);
        // c3(F(d)) = 2g − 2 + deg·(4 − c1(F(d))), c1(F(d)) = 2 + d
        ensure!(
            c.points == 2 * c.genus - 2 + deg * (2 - d),
            "d = {d}: genus identity"
        );
    }
    Ok(())
}

fn c7_spectrum() -> Check {
    let q = ThreefoldData::quintic();
    for r in 2..=10i64 {
        let s = spectrum_point(&q, r).map_err(err)?;
        let want = 200 + 50 * r + 5 * r * r * r;
        ensure!(
            s.triple.n3 == want,
            "quintic r = {r}: c3 {} != {want}",
            s.triple.n3
        );
        ensure!(
            normalize(&s).map_err(err)?.triple.n3 == want,
            "quintic r = {r}: orbit"
        );
    }
    let p3 = ThreefoldData::p3();
    for r in 2..=20i64 {
        let s = spectrum_point(&p3, r).map_err(err)?;
        let d = dist_chern(&DistributionProfile::new(p3.clone(), p3.c_x - r, true)).map_err(err)?;
        ensure!(s.triple == d, "P^3 r = {r}: {} != {d}", s.triple);
    }
    Ok(())
}

fn c8_connectedness() -> Check {
    for d in (0..=1).chain(3..=8i64) {
        let p = DistributionProfile::p3_degree(d, false);
        for c3 in 0..=30u64 {
            for h2 in c3..=c3 + 5 {
                let r = conn_components(&p, DimEntry::Known(h2), c3, None).map_err(err)?;
                let one = r.count == ComponentCount::Exact(1);
                ensure!(
                    one == (h2 == c3),
                    "d = {d}, h2 = {h2}, c3 = {c3}: {:?}",
                    r.count
                );
            }
        }
    }
    let q = DistributionProfile::new(ThreefoldData::quintic(), -2, false);
    for c3 in [0u64, 17, 340] {
        let r = conn_components(&q, DimEntry::Known(c3), c3, Some((true, true))).map_err(err)?;
        ensure!(
            r.count == ComponentCount::Exact(1),
            "quintic c3 = {c3}: {:?}",
            r.count
        );
    }
    let d2 = DistributionProfile::p3_degree(2, false);
    for h2 in 20..=30u64 {
        match conn_components(&d2, DimEntry::Known(h2), 20, None)
            .map_err(err)?
            .count
        {
            ComponentCount::Interval(lo, hi) if hi - lo == 1 => {}
            other => return Err(format!("d = 2, h2 = {h2}: {other:?}")),
        }
    }
    ensure!(generic_h2_suggestion(2).is_ok(), "no generic h2 for d = 2");
    Ok(())
}

fn run_suite<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check
where
    S::Value: std::fmt::Debug,
{
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(256)
    };
    let mut runner = TestRunner::new(config);
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn expr() -> impl Strategy<Value = SheafExpr> {
    let ident = "[a-zA-Z_][a-zA-Z0-9_]{0,4}".prop_filter("keyword", |s| is_valid_identifier(s));
    let leaf = prop_oneof![
        (-50i64..=50).prop_map(SheafExpr::line),
        Just(SheafExpr::tangent()),
        Just(SheafExpr::cotangent()),
        ident.prop_map(SheafExpr::named),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), -50i64..=50).prop_map(|(e, t)| e.twist(t)),
            inner.clone().prop_map(SheafExpr::rdual),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sum(b)),
            (inner.clone(), inner).prop_map(|(a, b)| SheafExpr::coker(a, b)),
        ]
    })
}

fn c9_property_suites() -> Check {
    let x = ThreefoldData::p3();
    let chern = (1u32..=3, -1000i64..=1000, -1000i64..=1000, -1000i64..=1000)
        .prop_map(|(r, a, b, c)| ChernData::new(r, a, b, c));
    run_suite(
        "twist group law",
        (chern.clone(), -20i64..=20, -20i64..=20),
        |(c, a, b)| {
            let ab = twist_chern(&twist_chern(&c, a, &x).unwrap(), b, &x).unwrap();
            prop_assert_eq!(ab, twist_chern(&c, a + b, &x).unwrap());
            Ok(())
        },
    )?;
    let wide = (
        0u32..=3,
        -1_000_000i64..=1_000_000,
        -1_000_000i64..=1_000_000,
        -1_000_000i64..=1_000_000,
    )
        .prop_map(|(r, a, b, c)| ChernData::new(r, a, b, c));
    run_suite("ch round trip", wide, |c| {
        prop_assert_eq!(ch_to_chern(&chern_to_ch(&c, &x), &x).unwrap(), c);
        Ok(())
    })?;
    run_suite(
        "les chaser soundness",
        (-8i64..=8, -8i64..=8, any::<u16>()),
        |(a, b, mask)| {
            let twists: Vec<i64> = (-2..=2).collect();
            let ta = line_table(a, twists.clone());
            let tc = line_table(b, twists.clone());
            let tb = ta.direct_sum(&tc);
            let mut hidden = [ta.clone(), tb.clone(), tc.clone()];
            for (k, table) in hidden.iter_mut().enumerate() {
                for (j, &t) in twists.iter().enumerate() {
                    let i = ((j + k) % 4) as u8;
                    if mask >> ((3 * j + k) % 16) & 1 == 1 {
                        table.set(i, t, DimEntry::Unknown);
                    }
                }
            }
            let (oa, ob, oc) = les_chase(&hidden[0], &hidden[1], &hidden[2]).unwrap();
            for (got, truth) in [(&oa, &ta), (&ob, &tb), (&oc, &tc)] {
                for &t in &twists {
                    for i in 0..4 {
                        let n = truth.get(i, t).known().unwrap();
                        prop_assert!(got.get(i, t).contains(n));
                    }
                }
            }
            Ok(())
        },
    )?;
    run_suite("parser round trip", expr(), |e| {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
        Ok(())
    })?;
    run_suite("whitney additivity", (chern.clone(), chern), |(a, b)| {
        let s = chow::sum_chern(&a, &b, &x).unwrap();
        prop_assert_eq!(chow::ses_third(Some(&a), Some(&s), None, &x).unwrap(), b);
        Ok(())
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "Chern-triple reproduction, d in [0,50], two routes",
            c1_chern_triples,
        ),
        ("moduli dimension identity", c2_moduli_dimension),
        ("cohomology grid, closed form vs chaser", c3_cohomology_grid),
        ("Bott / Serre / Riemann-Roch agreement", c4_bott_serre_hrr),
        ("special cases d = 0, 1, 2", c5_special_cases),
        ("curve family, d in [1,50]", c6_curve_family),
        ("stable spectrum points", c7_spectrum),
        ("connected components", c8_connectedness),
        (
            "randomized property suites, 256 cases each",
            c9_property_suites,
        ),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("[PASS] {}. {name}", n + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why}", n + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
