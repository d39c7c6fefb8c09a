//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use fracmom::bernoulli::{
    bernoulli_poly, expand_sympower, shifted_legendre, shifted_legendre_bernoulli_form,
};
use fracmom::constants::{zeta_at_bits, Precision, Real};
use fracmom::exactmath::{binom, Poly, Rational};
use fracmom::moments::{
    double_moment, furdui_series, hermite_moment, identity_suite, moment_power, moment_sympower,
    IdentityId, IdentityStatus, MomentFamily, Source, ZetaSumCase,
};
use fracmom::oracle::{
    cross_check, loggamma_quadrature, loggamma_quadrature_at_zero, oracle_interval_series,
    oracle_polygamma, LogGammaWeight,
};
use fracmom::registry;
use fracmom::symbolic::{a_seq, b_seq, loggamma_integral_trig, TrigKind};
use std::time::Instant;

fn report(criterion: u32, pass: bool, detail: &str) {
    println!(
        "criterion {criterion:02} {}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_basic_moment_both_oracles() {
    let start = Instant::now();
    let prec = Precision::new(30);
    let bits = prec.working_bits();
    let truth = Real::from_decimal_str("0.4227843350984671", bits).unwrap();
    let tol = Real::pow10_neg(12, bits);
    let o1 = oracle_interval_series(&MomentFamily::Power(1), 0, prec).unwrap();
    let o2 = oracle_polygamma(&MomentFamily::Power(1), 0, prec).unwrap();
    let d1 = o1.value.sub(&truth).abs();
    let d2 = o2.value.sub(&truth).abs();
    let elapsed = start.elapsed();
    let pass = d1.le(&tol) && d2.le(&tol) && elapsed.as_secs() < 60;
    report(
        1,
        pass,
        &format!(
            "both oracles reproduce 1-gamma = 0.4227843350984671 to 1e-12 at P=30 \
             (diffs {} / {}, {:?})",
            d1.to_decimal(16),
            d2.to_decimal(16),
            elapsed
        ),
    );
}

#[test]
fn criterion_02_power_grid() {
    let start = Instant::now();
    let prec = Precision::new(30);
    let tol = Real::pow10_neg(10, prec.working_bits());
    let mut worst = String::new();
    let mut ok = true;
    for m in 1..=6u32 {
        for k in 0..=12u32 {
            let rep = cross_check(&MomentFamily::Power(m), k, prec, &tol).unwrap();
            if !rep.pass {
                ok = false;
                worst = format!("first failure at m={m} k={k}: {}", rep.max_abs_diff);
                break;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = ok && elapsed.as_secs() < 600;
    report(
        2,
        pass,
        &format!(
            "power grid 1<=m<=6, 0<=k<=12 agrees with engine and both oracles to 1e-10 \
             ({} cells, {:?}) {worst}",
            6 * 13,
            elapsed
        ),
    );
}

#[test]
fn criterion_03_bernoulli_grid() {
    let start = Instant::now();
    let prec = Precision::new(30);
    let tol = Real::pow10_neg(10, prec.working_bits());
    let reg = registry::known_discrepancies();
    let mut ok = true;
    let mut discrepancies = Vec::new();
    for n in 1..=6u32 {
        for k in 0..=12u32 {
            let rep = cross_check(&MomentFamily::BernoulliPoly(n), k, prec, &tol).unwrap();
            // a failed printed formula must be caught, attributed to its
            // regime, and replaced by an engine-backed value
            if let Some(d) = &rep.discrepancy {
                discrepancies.push(format!("n={n} k={k} regime={}", d.regime));
                let attributed = rep.source == Source::Engine
                    && registry::is_registered(&reg, &rep.family, &d.regime);
                if !attributed {
                    ok = false;
                }
            }
            if !rep.pass {
                ok = false;
            }
        }
    }
    let pass = ok;
    report(
        3,
        pass,
        &format!(
            "Bernoulli grid 1<=n<=6, 0<=k<=12 to 1e-10; printed formulas reproduced \
             exactly ({} regime discrepancies) in {:?}",
            discrepancies.len(),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_04_sympower_grid_and_decomposition() {
    let start = Instant::now();
    let prec = Precision::new(30);
    let tol = Real::pow10_neg(10, prec.working_bits());
    let mut ok = true;
    for m in 1..=5u32 {
        for k in 0..=10u32 {
            let rep = cross_check(&MomentFamily::SymPower(m), k, prec, &tol).unwrap();
            if !rep.pass {
                ok = false;
            }
        }
    }
    // binomial decomposition: I_k^m = Σ_i (-1)^i C(m,i)·C_k^{m+i} at 1e-20
    let tight = Real::pow10_neg(20, prec.working_bits());
    let mut worst_dec = Real::zero(prec.working_bits());
    for m in 1..=5u32 {
        for k in 0..=10u32 {
            let lhs = moment_sympower(m, k).value.eval(prec).unwrap();
            let mut rhs = Real::zero(prec.working_bits());
            for i in 0..=m {
                let c = binom(m as i64, i as i64).unwrap();
                let term = moment_power(m + i, k).value.eval(prec).unwrap().mul_rational(&c);
                rhs = if i % 2 == 0 { rhs.add(&term) } else { rhs.sub(&term) };
            }
            let d = lhs.sub(&rhs).abs();
            if worst_dec.lt(&d) {
                worst_dec = d;
            }
        }
    }
    if !worst_dec.le(&tight) {
        ok = false;
    }
    report(
        4,
        ok,
        &format!(
            "sympower grid 1<=m<=5, 0<=k<=10 to 1e-10 and binomial decomposition to 1e-20 \
             (worst decomposition diff {}) in {:?}",
            worst_dec.to_decimal(24),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_05_trig_moments_and_loggamma_integrals() {
    let start = Instant::now();
    let prec = Precision::new(30);
    let tol8 = Real::pow10_neg(8, prec.working_bits());
    let mut ok = true;
    for k in 0..=7u32 {
        for f in [MomentFamily::Sine, MomentFamily::Cosine] {
            let rep = cross_check(&f, k, prec, &tol8).unwrap();
            if !rep.pass {
                ok = false;
            }
        }
    }
    // the two log-gamma integrals against direct quadrature, to 1e-10
    let tol10 = Real::pow10_neg(10, prec.working_bits());
    let (sin_quad, _) = loggamma_quadrature(&LogGammaWeight::Sine, prec).unwrap();
    let sin_closed = loggamma_integral_trig(TrigKind::Sine).eval(prec).unwrap();
    let (cos_quad, _) = loggamma_quadrature(&LogGammaWeight::Cosine, prec).unwrap();
    let cos_closed = loggamma_integral_trig(TrigKind::Cosine).eval(prec).unwrap();
    let ds = sin_quad.sub(&sin_closed).abs();
    let dc = cos_quad.sub(&cos_closed).abs();
    if !ds.le(&tol10) || !dc.le(&tol10) {
        ok = false;
    }
    report(
        5,
        ok,
        &format!(
            "trig moments k<=7 agree with oracles to 1e-8; log-gamma integrals match \
             quadrature to 1e-10 (diffs {} / {}) in {:?}",
            ds.to_decimal(14),
            dc.to_decimal(14),
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_06_zeta_series_closed_forms() {
    let start = Instant::now();
    let prec = Precision::new(30);
    let bits = prec.working_bits();
    let tol = Real::pow10_neg(10, bits);
    let mut ok = true;
    for m in 1..=6u32 {
        for k in 1..=6u32 {
            let series = furdui_series(m, k, prec).unwrap();
            let closed = moment_power(m, k).value.eval(prec).unwrap();
            if !series.sub(&closed).abs().le(&tol) {
                ok = false;
            }
        }
    }
    // displayed particular cases, against a direct summation of the series
    let direct_sum = |m: u32, order: u32| -> Real {
        // Σ_{j>=1} (ζ(m+j-order+1)-1) / ((m+j)(m+j-1)...(m+j-order+1))
        let mut acc = Real::zero(bits);
        for j in 1..400u64 {
            let s = m as u64 + j + 1 - order as u64;
            if s < 2 {
                continue;
            }
            let z = zeta_at_bits(s, bits).unwrap();
            let mut den = Rational::from_integer(1.into());
            for i in 0..order as u64 {
                den *= Rational::from_integer((m as u64 + j - i).into());
            }
            acc = acc.add(&z.sub(&Real::one(bits)).mul_rational(&den.recip()));
        }
        acc
    };
    for m in 2..=8u32 {
        let lhs = direct_sum(m, 2);
        let rhs = fracmom::moments::zeta_sum_closed(m, ZetaSumCase::KEqMMinus2)
            .unwrap()
            .eval(prec)
            .unwrap();
        if !lhs.sub(&rhs).abs().le(&tol) {
            ok = false;
        }
    }
    for m in 3..=8u32 {
        let lhs = direct_sum(m, 3);
        let rhs = fracmom::moments::zeta_sum_closed(m, ZetaSumCase::KEqMMinus3)
            .unwrap()
            .eval(prec)
            .unwrap();
        if !lhs.sub(&rhs).abs().le(&tol) {
            ok = false;
        }
    }
    report(
        6,
        ok,
        &format!(
            "zeta series equals power moments for m,k<=6 and both displayed particular \
             cases verify for m<=8, all to 1e-10, in {:?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_07_exact_identity_suites() {
    let start = Instant::now();
    let mut ok = true;
    for id in [IdentityId::FactorialRatioSums, IdentityId::AlternatingBinomialSums, IdentityId::PSumEvaluations] {
        let rep = identity_suite(id, 40);
        if !matches!(rep.status, IdentityStatus::AllExact) {
            ok = false;
        }
    }
    for m in 1..=20u32 {
        if expand_sympower(m).to_poly() != Poly::sympower(m) {
            ok = false;
        }
    }
    for m in 0..=15u32 {
        if shifted_legendre(m) != shifted_legendre_bernoulli_form(m).to_poly() {
            ok = false;
        }
    }
    let elapsed = start.elapsed();
    let pass = ok && elapsed.as_secs() < 120;
    report(
        7,
        pass,
        &format!(
            "identity suites exact for m<=40 (k<=2m+40), expansion exact for m<=20, \
             Legendre forms equal for m<=15, in {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_08_sequence_quadratures() {
    let start = Instant::now();
    let prec = Precision::new(30);
    let tol = Real::pow10_neg(10, prec.working_bits());
    let mut ok = true;
    let mut worst = Real::zero(prec.working_bits());
    for n in 0..=8u32 {
        let bn = bernoulli_poly(n);
        let a_closed = a_seq(n).eval(prec).unwrap();
        let (a_quad, _) = loggamma_quadrature_at_zero(&bn, prec).unwrap();
        let da = a_closed.sub(&a_quad).abs();
        let b_closed = b_seq(n).eval(prec).unwrap();
        let (b_quad, _) = loggamma_quadrature(&LogGammaWeight::Poly(bn), prec).unwrap();
        let db = b_closed.sub(&b_quad).abs();
        for d in [da, db] {
            if worst.lt(&d) {
                worst = d.clone();
            }
            if !d.le(&tol) {
                ok = false;
            }
        }
    }
    report(
        8,
        ok,
        &format!(
            "a_n and b_n match their log-gamma quadratures for n<=8 to 1e-10 \
             (worst diff {}, pins the zeta'(-2n) sign convention) in {:?}",
            worst.to_decimal(14),
            start.elapsed()
        ),
    );
}

/// Iterated 2-D quadrature of ∫₀¹∫₀¹ {x/y}ᵐ{y/x}ᵏ dx dy in double precision.
///
/// The strips x < δ and y < δ contribute at most 2δ since the integrand is
/// bounded by 1. Elsewhere the inner integral is split exactly at the jumps
/// of {x/y} (x = j·y) and of {y/x} (x = y/t), with 8-point Gauss–Legendre on
/// each smooth piece; the outer integral gets panels broken at y = 1/j.
fn double_quad_f64(m: u32, k: u32) -> f64 {
    const GL8_X: [f64; 8] = [
        0.019_855_071_751_231_884,
        0.101_666_761_293_186_64,
        0.237_233_795_041_835_5,
        0.408_282_678_752_175_1,
        0.591_717_321_247_825,
        0.762_766_204_958_164_5,
        0.898_333_238_706_813_4,
        0.980_144_928_248_768_1,
    ];
    const GL8_W: [f64; 8] = [
        0.050_614_268_145_188_13,
        0.111_190_517_226_687_24,
        0.156_853_322_938_943_63,
        0.181_341_891_689_181,
        0.181_341_891_689_181,
        0.156_853_322_938_943_63,
        0.111_190_517_226_687_24,
        0.050_614_268_145_188_13,
    ];
    let frac = |t: f64| t - t.floor();
    let g = |x: f64, y: f64| frac(x / y).powi(m as i32) * frac(y / x).powi(k as i32);
    let delta = 2.5e-4;
    let inner = |y: f64| -> f64 {
        // breakpoints of the integrand in x over (delta·y, 1)
        let mut cuts = vec![1.0f64];
        let mut j = 1u64;
        while (j as f64) * y < 1.0 {
            cuts.push(j as f64 * y);
            j += 1;
            if j > 2_000_000 {
                break;
            }
        }
        let mut t = 2u64;
        while y / (t as f64) > 1e-2 * y {
            if y / (t as f64) < 1.0 {
                cuts.push(y / t as f64);
            }
            t += 1;
        }
        cuts.push(1e-2 * y);
        cuts.retain(|&c| c >= 1e-2 * y && c <= 1.0);
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();
        let mut acc = 0.0;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a < 1e-300 {
                continue;
            }
            for i in 0..8 {
                let x = a + (b - a) * GL8_X[i];
                acc += (b - a) * GL8_W[i] * g(x, y);
            }
        }
        acc
    };
    // outer panels: geometric from delta plus breaks at 1/j
    let mut ycuts = vec![1.0f64];
    let mut c = delta;
    while c < 1.0 {
        ycuts.push(c);
        c *= 2.0;
    }
    for j in 2..=32u32 {
        let b = 1.0 / j as f64;
        if b > delta {
            ycuts.push(b);
        }
    }
    ycuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ycuts.dedup();
    let mut acc = 0.0;
    for w in ycuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        for i in 0..8 {
            let y = a + (b - a) * GL8_X[i];
            acc += (b - a) * GL8_W[i] * inner(y);
        }
    }
    acc
}

#[test]
fn criterion_09_hermite_and_double_integral() {
    let start = Instant::now();
    let prec = Precision::new(20);
    let bits = prec.working_bits();
    let tol8 = Real::pow10_neg(8, bits);
    let mut ok = true;
    // oracle: n^{k+1}·(I_k of {1/x} + (n-1)/(2(k+1))), from the shift identity
    for n in 1..=4u32 {
        for k in 0..=6u32 {
            let base = oracle_interval_series(&MomentFamily::Power(1), k, prec).unwrap();
            let shift = Rational::new((n as i64 - 1).into(), (2 * (k as i64 + 1)).into());
            let npow = Rational::from_integer((n as i64).into()).pow(k as i32 + 1);
            let oracle_val = base
                .value
                .add(&Real::from_rational(&shift, bits))
                .mul_rational(&npow);
            let closed = hermite_moment(n, k).eval(prec).unwrap();
            if !closed.sub(&oracle_val).abs().le(&tol8) {
                ok = false;
            }
        }
    }
    // double integral against genuine 2-D iterated quadrature at 1e-3
    let mut worst2d = 0.0f64;
    for m in 1..=3u32 {
        for k in 1..=3u32 {
            let closed = double_moment(m, k).eval(prec).unwrap().to_f64();
            let quad = double_quad_f64(m, k);
            let d = (closed - quad).abs();
            if d > worst2d {
                worst2d = d;
            }
            if d > 1e-3 {
                ok = false;
            }
        }
    }
    report(
        9,
        ok,
        &format!(
            "Hermite moments n<=4,k<=6 match the shift-identity oracle to 1e-8; double \
             moments m,k<=3 match 2-D quadrature to 1e-3 (worst {worst2d:.2e}) in {:?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_10_property_suites() {
    // the randomized property suites live in tests/properties.rs and run
    // under fixed seeds; this criterion asserts the deterministic envelope:
    // binomial conventions, oracle bound honesty, and normal-form algebra
    let start = Instant::now();
    let mut ok = true;
    // binomial conventions
    ok &= binom(3, 5).unwrap() == Rational::from_integer(0.into());
    ok &= binom(5, -1).unwrap() == Rational::from_integer(0.into());
    ok &= binom(-2, 1).is_err();
    // oracle bound honesty on a spread of cells
    let prec = Precision::new(18);
    for (f, k) in [
        (MomentFamily::Power(2), 0u32),
        (MomentFamily::SymPower(2), 3),
        (MomentFamily::BernoulliPoly(3), 5),
        (MomentFamily::Sine, 2),
    ] {
        let o1 = oracle_interval_series(&f, k, prec).unwrap();
        let o2 = oracle_polygamma(&f, k, prec).unwrap();
        let d = o1.value.sub(&o2.value).abs();
        if !d.le(&o1.error_bound.add(&o2.error_bound)) {
            ok = false;
        }
    }
    // normal-form algebra
    let v = fracmom::moments::moment_power(3, 1).value;
    ok &= v.sub(&v).is_zero();
    report(
        10,
        ok,
        &format!(
            "binomial conventions, oracle bound honesty and normal-form algebra hold \
             (seeded randomized suites in tests/properties.rs) in {:?}",
            start.elapsed()
        ),
    );
}
