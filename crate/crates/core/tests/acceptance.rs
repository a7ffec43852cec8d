//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use ccq_core::algebra::{outer_product, Multivector};
use ccq_core::gates::{
    self, apply, exp_element, gate_from_u2, ketbra, super_tensor, wire_coefficients, Gate,
    GateElement, WireFactor, EXP_TOL,
};
use ccq_core::oracle::{fuzz, random_u2, FuzzConfig};
use ccq_core::real_ga::{
    bloch_verify, complex_structure, correlator, iso_check, quat_decode, quat_encode, quat_inner,
    quat_pauli, rc_decode, rc_encode, rc_inner, rc_pauli,
};
use ccq_core::witt::{basis_state, index_bits, spinor_inner, state_to_amplitudes, WittContext};
use ccq_core::{compare_backends, parse_circuit};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const IM: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact(label: &str, got: &Multivector, want: &Multivector) -> Result<(), String> {
    let d = got.max_deviation(want);
    ensure(d == 0.0, || format!("{label}: deviation {d:.1e}"))
}

fn within(label: &str, got: &Multivector, want: &Multivector, tol: f64) -> Result<f64, String> {
    let d = got.max_deviation(want);
    ensure(d < tol, || format!("{label}: deviation {d:.1e} ≥ {tol:.1e}"))?;
    Ok(d)
}

fn witt_identities() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        let ctx = WittContext::new(n).unwrap();
        let sig = ctx.signature();
        let zero = ctx.zero();
        let one = ctx.one();
        for j in 1..=n {
            let ej = Multivector::generator(sig, j);
            let ejn = Multivector::generator(sig, j + n);
            let f = (&ej - &ejn.scale(IM)).scale(0.5);
            let fd = (&ej + &ejn.scale(IM)).scale(0.5);
            exact(&format!("n={n} f{j} definition"), ctx.f(j), &f)?;
            exact(&format!("n={n} f{j}† definition"), ctx.f_dag(j), &fd)?;
            exact(&format!("n={n} f{j}†=(f{j})†"), &ctx.f(j).dagger(), ctx.f_dag(j))?;
            exact(&format!("n={n} f{j}²"), &(ctx.f(j) * ctx.f(j)), &zero)?;
            exact(&format!("n={n} f{j}†²"), &(ctx.f_dag(j) * ctx.f_dag(j)), &zero)?;
            for k in 1..=n {
                let delta = if j == k { &one } else { &zero };
                let mixed = ctx.f(j) * ctx.f_dag(k) + ctx.f_dag(k) * ctx.f(j);
                exact(&format!("n={n} {{f{j}, f{k}†}}"), &mixed, delta)?;
                let ff = ctx.f(j) * ctx.f(k) + ctx.f(k) * ctx.f(j);
                exact(&format!("n={n} {{f{j}, f{k}}}"), &ff, &zero)?;
                let dd = ctx.f_dag(j) * ctx.f_dag(k) + ctx.f_dag(k) * ctx.f_dag(j);
                exact(&format!("n={n} {{f{j}†, f{k}†}}"), &dd, &zero)?;
                checked += 3;
            }
        }
    }
    Ok(format!("{checked} anticommutators exact"))
}

fn idempotents() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        let ctx = WittContext::new(n).unwrap();
        let zero = ctx.zero();
        let one = ctx.one();
        for j in 1..=n {
            let (i, k) = (ctx.idem_i(j), ctx.idem_k(j));
            exact("I_j = f_j f_j†", i, &(ctx.f(j) * ctx.f_dag(j)))?;
            exact("K_j = f_j† f_j", k, &(ctx.f_dag(j) * ctx.f(j)))?;
            exact("I_j²", &(i * i), i)?;
            exact("K_j²", &(k * k), k)?;
            exact("I_j K_j", &(i * k), &zero)?;
            exact("K_j I_j", &(k * i), &zero)?;
            exact("I_j + K_j", &(i + k), &one)?;
            exact("I_j†", &i.dagger(), i)?;
            exact("K_j†", &k.dagger(), k)?;
            for l in 1..=n {
                if l == j {
                    continue;
                }
                let (il, kl) = (ctx.idem_i(l), ctx.idem_k(l));
                exact("I_j I_l", &(i * il), &(il * i))?;
                exact("I_j K_l", &(i * kl), &(kl * i))?;
                exact("K_j K_l", &(k * kl), &(kl * k))?;
                exact("I_j f_l", &(i * ctx.f(l)), &(ctx.f(l) * i))?;
                exact("I_j f_l†", &(i * ctx.f_dag(l)), &(ctx.f_dag(l) * i))?;
                checked += 5;
            }
            checked += 9;
        }
        let p = ctx.primitive();
        exact("I²", &(p * p), p)?;
        exact("I†", &p.dagger(), p)?;
        checked += 2;
    }
    Ok(format!("{checked} identities exact"))
}

fn orthonormality() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for n in 1..=4 {
        let ctx = WittContext::new(n).unwrap();
        let states: Vec<_> = (0..1 << n)
            .map(|k| basis_state(&ctx, &index_bits(k, n)).unwrap())
            .collect();
        for (a, sa) in states.iter().enumerate() {
            for (b, sb) in states.iter().enumerate() {
                let want = if a == b { ONE } else { ZERO };
                let err = (spinor_inner(&ctx, sa, sb).unwrap() - want).norm();
                worst = worst.max(err);
                pairs += 1;
            }
        }
    }
    ensure(worst < 1e-12, || format!("max error {worst:.1e}"))?;
    Ok(format!("{pairs} pairs, max error {worst:.1e}"))
}

fn single_gate_forms() -> Outcome {
    let ctx = WittContext::new(1).unwrap();
    let sig = ctx.signature();
    let (f, fd) = (ctx.f(1), ctx.f_dag(1));
    let e1 = Multivector::generator(sig, 1);
    let e2 = Multivector::generator(sig, 2);
    let x = gates::gate_x(&ctx, 1).unwrap();
    let y = gates::gate_y(&ctx, 1).unwrap();
    let z = gates::gate_z(&ctx, 1).unwrap();
    exact("λ_X = f† + f", x.value(), &(fd + f))?;
    exact("λ_Y = i f† − i f", y.value(), &(fd.scale(IM) - f.scale(IM)))?;
    exact("λ_Z = f f† − f† f", z.value(), &(f * fd - fd * f))?;
    exact("λ_X = e1", x.value(), &e1)?;
    exact("λ_Y = −e2", y.value(), &-&e2)?;
    exact("λ_Z = i e1∧e2", z.value(), &outer_product(&e1, &e2).unwrap().scale(IM))?;
    exact("XZ = f† − f", &(x.value() * z.value()), &(fd - f))?;
    exact("X² = 1", &(x.value() * x.value()), &ctx.one())?;
    let h_form = (f * fd - fd * f + f + fd).scale(FRAC_1_SQRT_2);
    let rot = exp_element(&y.value().scale(c(0.0, -FRAC_PI_4)), EXP_TOL).unwrap();
    let h_exp = x.value() * &rot;
    let d1 = within("X exp(−iYπ/4) vs H", &h_exp, &h_form, 1e-13)?;
    let d2 = within("gate_h vs H", gates::gate_h(&ctx, 1).unwrap().value(), &h_form, 1e-13)?;
    Ok(format!("exact forms; H error {:.1e}", d1.max(d2)))
}

fn tensor(ctx: &WittContext, factors: Vec<Multivector>) -> Multivector {
    super_tensor(ctx, &factors).unwrap().into_value()
}

fn multi_gate_forms() -> Outcome {
    let tol = 1e-12;
    let mut worst: f64 = 0.0;
    let mut track = |label: &str, got: &Multivector, want: &Multivector| -> Result<(), String> {
        worst = worst.max(within(label, got, want, tol)?);
        Ok(())
    };

    let ctx = WittContext::new(2).unwrap();
    let one = ctx.one();
    let (f1, f1d, f2, f2d) = (ctx.f(1), ctx.f_dag(1), ctx.f(2), ctx.f_dag(2));
    let (i1, k1, i2, k2) = (ctx.idem_i(1), ctx.idem_k(1), ctx.idem_i(2), ctx.idem_k(2));
    let x2 = f2d + f2;
    let z2 = i2 - k2;
    let kb = |o: [bool; 2], i: [bool; 2]| ketbra(&ctx, &o, &i).unwrap();
    let (b00, b01, b10, b11) = ([false, false], [false, true], [true, false], [true, true]);

    let cnot = gates::gate_cnot(&ctx, 1, 2).unwrap().into_value();
    track("CNOT closed form", &cnot, &(i1 - &(k1 * &x2)))?;
    let cnot_kb = kb(b00, b00) + kb(b01, b01) + kb(b11, b10) + kb(b10, b11);
    track("CNOT ket-bra form", &cnot, &cnot_kb)?;
    let cnot_st = tensor(&ctx, vec![i1.clone(), one.clone()]) + tensor(&ctx, vec![k1.clone(), x2.clone()]);
    track("CNOT via super_tensor", &cnot, &cnot_st)?;

    let cz = gates::gate_cz(&ctx, 1, 2).unwrap().into_value();
    track("CZ closed form", &cz, &(i1 + &(k1 * &z2)))?;
    let cz_kb = kb(b00, b00) + kb(b01, b01) + kb(b10, b10) - kb(b11, b11);
    track("CZ ket-bra form", &cz, &cz_kb)?;
    let cz_st = tensor(&ctx, vec![i1.clone(), one.clone()]) + tensor(&ctx, vec![k1.clone(), z2.clone()]);
    track("CZ via super_tensor", &cz, &cz_st)?;

    let swap = gates::gate_swap(&ctx, 1, 2).unwrap().into_value();
    track("SWAP closed form", &swap, &(i1 * i2 + k1 * k2 + f1d * f2 - f1 * f2d))?;
    let swap_kb = kb(b00, b00) + kb(b11, b11) + kb(b10, b01) + kb(b01, b10);
    track("SWAP ket-bra form", &swap, &swap_kb)?;
    let swap_st = tensor(&ctx, vec![i1.clone(), i2.clone()])
        + tensor(&ctx, vec![k1.clone(), k2.clone()])
        + tensor(&ctx, vec![f1d.clone(), f2.clone()])
        + tensor(&ctx, vec![f1.clone(), f2d.clone()]);
    track("SWAP via super_tensor", &swap, &swap_st)?;

    let ctx = WittContext::new(3).unwrap();
    let one = ctx.one();
    let (f2, f2d, f3, f3d) = (ctx.f(2), ctx.f_dag(2), ctx.f(3), ctx.f_dag(3));
    let (i1, k1) = (ctx.idem_i(1), ctx.idem_k(1));
    let (i2, k2, i3, k3) = (ctx.idem_i(2), ctx.idem_k(2), ctx.idem_i(3), ctx.idem_k(3));
    let x3 = f3d + f3;

    let ccnot = gates::gate_ccnot(&ctx, 1, 2, 3).unwrap().into_value();
    let k1k2 = k1 * k2;
    track("CCNOT closed form", &ccnot, &(&one + &(&k1k2 * &(f3 + f3d - &one))))?;
    track("CCNOT = 1 − K1K2 + K1K2X3", &ccnot, &(&one - &k1k2 + &k1k2 * &x3))?;
    let ccnot_st = tensor(&ctx, vec![i1.clone(), i2.clone(), one.clone()])
        + tensor(&ctx, vec![i1.clone(), k2.clone(), one.clone()])
        + tensor(&ctx, vec![k1.clone(), i2.clone(), one.clone()])
        + tensor(&ctx, vec![k1.clone(), k2.clone(), x3.clone()]);
    track("CCNOT via super_tensor", &ccnot, &ccnot_st)?;
    let rendered = ccq_core::witt::render_witt(&ctx, &ccnot).unwrap();
    ensure(rendered == "1 + f1† f1 f2† f2 (f3 + f3† − 1)", || {
        format!("CCNOT rendering `{rendered}`")
    })?;

    let cswap = gates::gate_cswap(&ctx, 1, 2, 3).unwrap().into_value();
    let inner = i2 * i3 + k2 * k3 + f2d * f3 - f2 * f3d;
    track("CSWAP closed form", &cswap, &(i1 + &(k1 * &inner)))?;
    let cswap_st = tensor(&ctx, vec![i1.clone(), one.clone(), one.clone()])
        + tensor(&ctx, vec![k1.clone(), i2.clone(), i3.clone()])
        + tensor(&ctx, vec![k1.clone(), k2.clone(), k3.clone()])
        + tensor(&ctx, vec![k1.clone(), f2d.clone(), f3.clone()])
        + tensor(&ctx, vec![k1.clone(), f2.clone(), f3d.clone()]);
    track("CSWAP via super_tensor", &cswap, &cswap_st)?;

    Ok(format!("5 gates, max error {worst:.1e}"))
}

// Action of a wire factor on one bit: the output bit, or None if annihilated.
fn factor_on_bit(w: WireFactor, bit: bool) -> Option<bool> {
    match (w, bit) {
        (WireFactor::I, false) => Some(false),
        (WireFactor::K, true) => Some(true),
        (WireFactor::F, true) => Some(false),
        (WireFactor::FDag, false) => Some(true),
        _ => None,
    }
}

fn tensor_product_rule() -> Outcome {
    let mut products = 0;
    for n in 2..=3 {
        let ctx = WittContext::new(n).unwrap();
        let states: Vec<_> = (0..1 << n)
            .map(|k| basis_state(&ctx, &index_bits(k, n)).unwrap())
            .collect();
        for word in 0..4usize.pow(n as u32) {
            let factors: Vec<WireFactor> = (0..n)
                .map(|k| WireFactor::ALL[(word >> (2 * k)) & 3])
                .collect();
            let elems: Vec<Multivector> = factors
                .iter()
                .enumerate()
                .map(|(k, w)| w.element(&ctx, k + 1))
                .collect();
            let g = super_tensor(&ctx, &elems).unwrap();
            for (b, state) in states.iter().enumerate() {
                let bits = index_bits(b, n);
                let out: Option<Vec<bool>> = factors
                    .iter()
                    .zip(&bits)
                    .map(|(w, &bit)| factor_on_bit(*w, bit))
                    .collect();
                let want = match out {
                    Some(bits) => basis_state(&ctx, &bits).unwrap().into_value(),
                    None => ctx.zero(),
                };
                let got = apply(&g, state).unwrap();
                exact(&format!("{factors:?} on |{b:0n$b}⟩"), got.value(), &want)?;
            }
            products += 1;
        }
    }

    let ctx = WittContext::new(2).unwrap();
    let (f1, f1d, f2, f2d) = (ctx.f(1), ctx.f_dag(1), ctx.f(2), ctx.f_dag(2));
    let x = |k: usize| ctx.f_dag(k) + ctx.f(k);
    let y = |k: usize| (ctx.f_dag(k) - ctx.f(k)).scale(IM);
    let xy = tensor(&ctx, vec![x(1), y(2)]);
    exact("X⊗Y", &xy, &(f1d * f2d - f1d * f2 - f1 * f2d + f1 * f2).scale(IM))?;
    let yx = tensor(&ctx, vec![y(1), x(2)]);
    exact("Y⊗X", &yx, &(f1d * f2d + f1d * f2 + f1 * f2d + f1 * f2).scale(IM))?;
    let idx = tensor(&ctx, vec![ctx.one(), x(2)]);
    exact("id⊗X", &idx, &(ctx.idem_i(1) * &x(2) - ctx.idem_k(1) * &x(2)))?;
    Ok(format!("{products} factor words on all basis states exact"))
}

fn all_wire_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (1..=n)
                    .filter(|w| !t.contains(w))
                    .map(|w| {
                        let mut t2 = t.clone();
                        t2.push(w);
                        t2
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn unitarity_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 1..=4 {
        let ctx = WittContext::new(n).unwrap();
        let mut registry: Vec<Gate> = Gate::NAMES
            .iter()
            .filter_map(|name| Gate::from_name(name))
            .collect();
        registry.extend([Gate::Phase(0.0), Gate::Phase(1.234), Gate::Phase(PI)]);
        registry.push(Gate::U2(random_u2(&mut rng)));
        for gate in registry {
            if gate.arity() > n {
                continue;
            }
            for wires in all_wire_tuples(n, gate.arity()) {
                let g = gate.element(&ctx, &wires).unwrap();
                let d = g.unitarity_deviation();
                ensure(d <= 1e-10, || format!("{gate} on {wires:?} (n={n}): deviation {d:.1e}"))?;
                worst = worst.max(d);
                count += 1;
            }
        }
    }
    Ok(format!("{count} gate placements, max deviation {worst:.1e}"))
}

fn differential_fuzz() -> Outcome {
    let config = FuzzConfig {
        seed: 20240601,
        circuits: 200,
        max_qubits: 4,
        depth: 20,
        tol: 1e-9,
    };
    let report = fuzz(&config).map_err(|e| e.to_string())?;
    ensure(report.passed, || {
        let first = report.cases.iter().find(|c| !c.passed).unwrap();
        format!(
            "{} failures, max deviation {:.1e}; first failing seed {}",
            report.failures, report.max_deviation, first.seed
        )
    })?;

    let bell = parse_circuit("qubits 2\nh 1\ncnot 1 2\n").unwrap();
    let cmp = compare_backends(&bell, &[false, false], 1e-9).unwrap();
    let probs: Vec<f64> = cmp.clifford.iter().map(|a| a.norm_sqr()).collect();
    let want = [0.5, 0.0, 0.0, 0.5];
    let perr = probs.iter().zip(want).map(|(p, w)| (p - w).abs()).fold(0.0, f64::max);
    ensure(perr < 1e-12, || format!("Bell probabilities {probs:?}"))?;
    Ok(format!(
        "seed {}, {} circuits, max deviation {:.1e}; Bell probability error {perr:.1e}",
        config.seed, config.circuits, report.max_deviation
    ))
}

fn u2_correspondence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let ctx = WittContext::new(1).unwrap();
    let states = [
        basis_state(&ctx, &[false]).unwrap(),
        basis_state(&ctx, &[true]).unwrap(),
    ];
    let mut action: f64 = 0.0;
    let mut herm: f64 = 0.0;
    for _ in 0..100 {
        let m = random_u2(&mut rng);
        let g: GateElement = gate_from_u2(&ctx, 1, &m).map_err(|e| e.to_string())?;
        ensure(g.unitarity_deviation() < 1e-10, || "non-unitary element".into())?;
        for (col, s) in states.iter().enumerate() {
            let amps = state_to_amplitudes(&ctx, &apply(&g, s).unwrap()).unwrap();
            for (row, a) in amps.iter().enumerate() {
                action = action.max((a - m[row][col]).norm());
            }
        }
        let [[a, b], [cc, d]] = wire_coefficients(&ctx, 1, g.value()).unwrap();
        herm = herm
            .max((a.norm_sqr() + cc.norm_sqr() - 1.0).abs())
            .max((b.norm_sqr() + d.norm_sqr() - 1.0).abs())
            .max((b.conj() * a + d.conj() * cc).norm());
    }
    ensure(action < 1e-10, || format!("action error {action:.1e}"))?;
    ensure(herm < 1e-12, || format!("Hermitian condition error {herm:.1e}"))?;
    Ok(format!("100 matrices, action error {action:.1e}, condition error {herm:.1e}"))
}

fn random_qubit(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let mut v = [0.0; 4];
    for x in &mut v {
        *x = rng.random_range(-1.0..1.0);
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (c(v[0] / norm, v[1] / norm), c(v[2] / norm, v[3] / norm))
}

fn pauli_matrix(k: usize) -> [[Complex64; 2]; 2] {
    match k {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -IM], [IM, ZERO]],
        _ => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

fn real_ga_suite() -> Outcome {
    let report = iso_check();
    ensure(report.pairs_checked == 256, || format!("{} pairs", report.pairs_checked))?;
    ensure(report.passed(0.0), || format!("{report:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(314);
    let mut inner_err: f64 = 0.0;
    let mut pauli_err: f64 = 0.0;
    for _ in 0..100 {
        let (a1, b1) = random_qubit(&mut rng);
        let (a2, b2) = random_qubit(&mut rng);
        let want = a1.conj() * a2 + b1.conj() * b2;
        let q = quat_inner(&quat_encode(a1, b1), &quat_encode(a2, b2));
        let r = rc_inner(&rc_encode(a1, b1), &rc_encode(a2, b2));
        inner_err = inner_err.max((q - want).norm()).max((r - want).norm());
        for k in 1..=3 {
            let p = pauli_matrix(k);
            let wa = p[0][0] * a1 + p[0][1] * b1;
            let wb = p[1][0] * a1 + p[1][1] * b1;
            let (qa, qb) = quat_decode(&quat_pauli(k, &quat_encode(a1, b1)).unwrap());
            let (ra, rb) = rc_decode(&rc_pauli(k, &rc_encode(a1, b1)).unwrap());
            pauli_err = pauli_err
                .max((qa - wa).norm())
                .max((qb - wb).norm())
                .max((ra - wa).norm())
                .max((rb - wb).norm());
        }
    }
    ensure(inner_err < 1e-12, || format!("inner product error {inner_err:.1e}"))?;
    ensure(pauli_err < 1e-12, || format!("Pauli action error {pauli_err:.1e}"))?;

    for n in 2..=3 {
        let e = correlator(n).unwrap();
        let d = (&e * &e).max_deviation(&e);
        ensure(d == 0.0, || format!("E_{n} not idempotent ({d:.1e})"))?;
        let ej1 = &e * &complex_structure(n, 1).unwrap();
        for k in 2..=n {
            let ejk = &e * &complex_structure(n, k).unwrap();
            let d = ejk.max_deviation(&ej1);
            ensure(d == 0.0, || format!("E_{n} J_{k} ≠ E_{n} J_1 ({d:.1e})"))?;
        }
    }
    Ok(format!(
        "256 pairs exact; inner error {inner_err:.1e}; Pauli error {pauli_err:.1e}; E_2, E_3 exact"
    ))
}

fn bloch_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for a in 0..=4 {
        let theta = a as f64 * FRAC_PI_4;
        for b in 0..6 {
            let phi = b as f64 * PI / 3.0;
            let v = bloch_verify(theta, phi);
            let want = [phi.cos() * theta.sin(), phi.sin() * theta.sin(), theta.cos()];
            for (x, y) in v.iter().zip(want) {
                worst = worst.max((x - y).abs());
            }
            points += 1;
        }
    }
    ensure(worst < 1e-12, || format!("max error {worst:.1e}"))?;
    Ok(format!("{points} grid points, max error {worst:.1e}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("Witt identities, n = 1..5", witt_identities),
        ("Idempotent identities, n = 1..5", idempotents),
        ("Basis orthonormality, n = 1..4", orthonormality),
        ("Single-qubit gate forms", single_gate_forms),
        ("Multi-qubit gate forms", multi_gate_forms),
        ("Tensor product sign rule, n = 2, 3", tensor_product_rule),
        ("Unitarity sweep, n = 1..4", unitarity_sweep),
        ("Differential fuzz against the matrix backend", differential_fuzz),
        ("U(2) correspondence", u2_correspondence),
        ("Real 𝔾₃ representations", real_ga_suite),
        ("Bloch sphere identity", bloch_identity),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2}. {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
