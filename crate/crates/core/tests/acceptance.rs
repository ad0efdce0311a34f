//! Acceptance criteria 1–7. Each test prints one PASS/FAIL line to stderr
//! (written directly, so it survives output capture) and then asserts.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fqt_core::base_algebra::ring::{identity, mat_mul};
use fqt_core::base_algebra::{FqField, LaurentSeries, PolyRing, Ring};
use fqt_core::config::SessionConfig;
use fqt_core::drinfeld::exp::apply_twisted_kinf;
use fqt_core::drinfeld::{e_module, exp_eval, DrinfeldModule};
use fqt_core::function_field::kinf;
use fqt_core::function_field::{build_cover, fixtures, taming_module, FiniteAGModule, GaloisCover};
use fqt_core::group_algebra::freeness::module_from_matrix;
use fqt_core::group_algebra::{fitting_ideal, CentralIdeal, DecompositionData, FiniteGroup, GroupRing, AG};
use fqt_core::invariants::checks::{mt2_check, mt3_check, verify_cnf, Options};
use fqt_core::lseries::{augmentation, char_class, theta_truncated, zeta_partial, CharClass};
use fqt_core::nuclear::{decomposition_for, min_ball, phi_e_sequence, trace_formula_verify};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_acce;

/// Criterion 1: precision and wall-clock budget.
const C1_PRECISION: usize = 6;
const C1_BUDGET: Duration = Duration::from_secs(10);
/// Criterion 2: Z-precisions and the budget for all runs together.
const C2_PRECISIONS: [usize; 3] = [2, 3, 4];
const C2_BUDGET: Duration = Duration::from_secs(60);
/// Criterion 3: maximal prime degree over F_2 and F_3.
const C3_DEGREES: [(u32, usize); 2] = [(2, 4), (3, 3)];
const C3_BUDGET: Duration = Duration::from_secs(5);
const C4_INSTANCES: usize = 200;
const C4_BUDGET: Duration = Duration::from_secs(60);
const C5_PRECISION: usize = 4;
const C5_BUDGET: Duration = Duration::from_secs(120);
const C6_PAIRS: usize = 36;
const C6_NRD_PAIRS: usize = 100;
const C6_MODULES: usize = 50;
const C6_BUDGET: Duration = Duration::from_secs(30);
/// Criterion 7: floor of the functional equations and inputs per fixture.
const C7_FLOOR: i64 = -10;
const C7_INPUTS: usize = 100;
const C7_BUDGET: Duration = Duration::from_secs(10);

fn report(k: usize, name: &str, ok: bool, elapsed: Duration, budget: Duration, detail: &str) {
    let in_time = elapsed <= budget;
    let verdict = if ok && in_time { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr().lock(),
        "acceptance criterion {k} [{verdict}] {name}: {detail} ({:.2}s of {}s)",
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert!(ok, "criterion {k} failed: {detail}");
    assert!(in_time, "criterion {k} exceeded its time budget");
}

fn carlitz(spec: fqt_core::function_field::CoverSpec) -> (GaloisCover, DrinfeldModule, fqt_core::function_field::TamingModule) {
    let c = build_cover(&spec).unwrap();
    let e = DrinfeldModule::carlitz(&c.fq);
    let m = taming_module(&c, None, 1).unwrap();
    (c, e, m)
}

#[test]
fn criterion_1_carlitz_class_number_formula() {
    let start = Instant::now();
    let n = C1_PRECISION;
    let floor = -(n as i64);
    let mut notes = vec![];
    let mut ok = true;
    for q in [2, 3] {
        let (c, e, m) = carlitz(fixtures::trivial(q));
        let zeta = zeta_partial(&c.fq, n);
        let th = theta_truncated(&c, &e, &m, n).unwrap();
        let theta = augmentation(th.value.as_ref().unwrap(), &c.fq);
        let theta_ok = theta.agrees_with(&zeta, Some(floor)).unwrap();
        let (rep, _) = verify_cnf(&c, &e, &m, n, &Options::default()).unwrap();
        let reg = augmentation(&rep.rhs, &c.fq);
        let reg_ok = reg.agrees_with(&zeta, Some(floor)).unwrap();
        ok &= theta_ok && rep.holds && rep.h_dim == 0 && reg_ok;
        notes.push(format!("q={q}: Θ=ζ {theta_ok}, cnf {}, H=0 {}, reg=ζ {reg_ok}", rep.holds, rep.h_dim == 0));
    }
    report(1, "Carlitz class number formula, N = 6", ok, start.elapsed(), C1_BUDGET, &notes.join("; "));
}

#[test]
fn criterion_2_trace_formula_exact() {
    let start = Instant::now();
    let mut notes = vec![];
    let mut ok = true;
    for (label, spec) in [("trivial/F3", fixtures::trivial(3)), ("trivial/F2", fixtures::trivial(2)), ("C2/F3", fixtures::carlitz_torsion_f3())] {
        let (c, e, m) = carlitz(spec);
        let dec = decomposition_for(&c.fq, &c.group).unwrap();
        for n in C2_PRECISIONS {
            let seq = phi_e_sequence(&e, n).unwrap();
            // cutoff D = N·r + 1 with r = 1
            assert_eq!(seq.prime_bound(), n + 1);
            let i = min_ball(&c, &m.lattice, &seq.terms).unwrap();
            let r = trace_formula_verify(&seq, &c, &m, i, &dec).unwrap();
            ok &= r.holds && r.product.is_one(&dec);
            if !r.holds {
                notes.push(format!("{label} N={n} fails"));
            }
        }
    }
    notes.insert(0, format!("trivial/F2, trivial/F3, C2/F3 at N ∈ {C2_PRECISIONS:?}"));
    report(2, "refined trace formula, exact mod Z^N", ok, start.elapsed(), C2_BUDGET, &notes.join("; "));
}

/// Polynomials over F_ℓ as coefficient vectors, lowest degree first; kept
/// separate from the library so the module matrices are built independently.
mod oracle {
    pub fn trim(mut p: Vec<u32>) -> Vec<u32> {
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    pub fn rem(a: &[u32], m: &[u32], l: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let d = m.len() - 1;
        let inv = (1..l).find(|x| x * m[d] % l == 1).unwrap();
        while a.len() > d {
            let c = a[a.len() - 1] * inv % l;
            let s = a.len() - 1 - d;
            for (i, &mi) in m.iter().enumerate() {
                a[s + i] = (a[s + i] + l * l - c * mi % l) % l;
            }
            a = trim(a);
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], l: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % l;
            }
        }
        trim(out)
    }

    pub fn monics(d: usize, l: u32) -> Vec<Vec<u32>> {
        (0..(l as usize).pow(d as u32))
            .map(|mut code| {
                let mut p: Vec<u32> = (0..d)
                    .map(|_| {
                        let c = (code % l as usize) as u32;
                        code /= l as usize;
                        c
                    })
                    .collect();
                p.push(1);
                p
            })
            .collect()
    }

    /// Trial division by every monic of degree 1..=d/2.
    pub fn irreducible(p: &[u32], l: u32) -> bool {
        let d = p.len() - 1;
        (1..=d / 2).all(|k| monics(k, l).iter().all(|m| !rem(p, m, l).is_empty()))
    }

    /// Matrix (columns = images of 1, t, …) of x ↦ f(x) on F_ℓ[t]/p.
    pub fn matrix(p: &[u32], l: u32, f: impl Fn(&[u32]) -> Vec<u32>) -> Vec<Vec<u32>> {
        let d = p.len() - 1;
        let mut m = vec![vec![0; d]; d];
        for j in 0..d {
            let mut e = vec![0; j + 1];
            e[j] = 1;
            let img = rem(&f(&e), p, l);
            for (i, &c) in img.iter().enumerate() {
                m[i][j] = c;
            }
        }
        m
    }
}

#[test]
fn criterion_3_characteristic_class_oracles() {
    let start = Instant::now();
    let mut ok = true;
    let mut count = 0;
    let mut notes = vec![];
    for (l, dmax) in C3_DEGREES {
        let f = FqField::prime(l).unwrap();
        let g = Arc::new(FiniteGroup::trivial());
        let ag = GroupRing::new(PolyRing::new(f.clone()), g.clone());
        let e = DrinfeldModule::carlitz(&f);
        let mut found = 0;
        for d in 1..=dmax {
            for p in oracle::monics(d, l).into_iter().filter(|p| oracle::irreducible(p, l)) {
                found += 1;
                // A/p: t acts by multiplication by t
                let times_t = oracle::matrix(&p, l, |x| oracle::mul(x, &[0, 1], l));
                let frob = oracle::matrix(&p, l, |x| (1..l).fold(x.to_vec(), |acc, _| oracle::mul(&acc, x, l)));
                let ap = FiniteAGModule::new(&f, g.clone(), times_t, vec![identity(&f, d)], Some(frob));
                // C(A/p): t acts by x ↦ t·x + x^q
                let carlitz_t = oracle::matrix(&p, l, |x| {
                    let tx = oracle::mul(x, &[0, 1], l);
                    let xq = (1..l).fold(x.to_vec(), |acc, _| oracle::mul(&acc, x, l));
                    let n = tx.len().max(xq.len());
                    oracle::trim((0..n).map(|i| (tx.get(i).unwrap_or(&0) + xq.get(i).unwrap_or(&0)) % l).collect())
                });
                let cp = FiniteAGModule::new(&f, g.clone(), carlitz_t.clone(), vec![identity(&f, d)], None);
                let mut p_minus_1 = p.clone();
                p_minus_1[0] = (p_minus_1[0] + l - 1) % l;
                let c1 = char_class(&ag, &ap).unwrap().value;
                let c2 = char_class(&ag, &cp).unwrap().value;
                let ok1 = c1 == Some(vec![p.clone()]);
                let ok2 = c2 == Some(vec![oracle::trim(p_minus_1)]);
                // the library's own Carlitz structure on A/p agrees with the hand-built one
                let ok3 = e_module(&e, &ap).unwrap().t_action == carlitz_t;
                if !(ok1 && ok2 && ok3) {
                    notes.push(format!("F{l}, p = {p:?}: A/p {ok1}, C(A/p) {ok2}, e_module {ok3}"));
                }
                ok &= ok1 && ok2 && ok3;
                count += 1;
            }
        }
        let lib = fqt_core::base_algebra::enumerate_monic_irreducibles(&PolyRing::new(f.clone()), dmax).len();
        ok &= lib == found;
        notes.push(format!("F{l}: {found} primes of degree ≤ {dmax}"));
    }
    report(3, "c_G(A/p) = p and c_G(C(A/p)) = p − 1", ok, start.elapsed(), C3_BUDGET, &format!("{count} primes; {}", notes.join("; ")));
}

fn random_fqg(rng: &mut ChaCha8Rng, q: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..q)).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, q: u32, n: usize, r: usize) -> Vec<Vec<Vec<u32>>> {
    (0..r).map(|_| (0..r).map(|_| random_fqg(rng, q, n)).collect()).collect()
}

struct Setting {
    label: &'static str,
    ag: AG,
    dec: DecompositionData,
}

fn settings() -> Vec<Setting> {
    let mk = |label, q: u32, g: FiniteGroup| {
        let f = FqField::prime(q).unwrap();
        let dec = decomposition_for(&f, &g).unwrap();
        Setting { label, ag: GroupRing::new(PolyRing::new(f), Arc::new(g)), dec }
    };
    vec![
        mk("1/F3", 3, FiniteGroup::trivial()),
        mk("C2/F3", 3, FiniteGroup::cyclic(2)),
        mk("C3/F2", 2, FiniteGroup::cyclic(3)),
        mk("S3/F2", 2, FiniteGroup::s3()),
    ]
}

/// c_G as an element of Z(A[G]): the determinant for abelian G, Nrd otherwise.
fn class_value(s: &Setting, c: &CharClass) -> Vec<Vec<u32>> {
    match &c.value {
        Some(v) => v.clone(),
        None => c.reduced(&s.ag, &s.dec).unwrap(),
    }
}

/// Z(A[G])·x, spanned over A by x times the class sums.
fn principal(ag: &AG, x: &[Vec<u32>]) -> CentralIdeal {
    let gens: Vec<_> = ag.class_sums().iter().map(|z| ag.mul(z, &x.to_vec())).collect();
    CentralIdeal::generated_by(ag, &gens)
}

/// Fitchar: Fit from the square presentation in the standard basis against
/// Z(A[G])·Nrd(c_G(M)) with c_G computed in a freshly searched basis.
fn fitchar_holds(s: &Setting, x: &[Vec<Vec<u32>>]) -> bool {
    let ag = &s.ag;
    let fit = fitting_ideal(ag, &CharClass::from_matrix(ag, x.to_vec()).relation_matrix(ag), &s.dec).unwrap();
    let mut m = module_from_matrix(&ag.fqg(), &x.to_vec());
    m.free_basis = None;
    let c = char_class(ag, &m).unwrap();
    fit == principal(ag, &class_value(s, &c))
}

#[test]
fn criterion_4_multiplicativity_and_fitchar() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ss = settings();
    let mut mult_fail = 0;
    let mut fit_fail = 0;
    for k in 0..C4_INSTANCES {
        let s = &ss[k % ss.len()];
        let (q, n) = (s.ag.fq().q, s.ag.group.order);
        let fqg = s.ag.fqg();
        // 0 → M1 → M → M2 → 0 with M1 spanned by the first r1 basis vectors
        let r1 = 1 + k % 2;
        let r2 = 1 + (k / 2) % 2;
        let x1 = random_matrix(&mut rng, q, n, r1);
        let x2 = random_matrix(&mut rng, q, n, r2);
        let mut x = vec![vec![fqg.zero(); r1 + r2]; r1 + r2];
        for i in 0..r1 + r2 {
            for j in 0..r1 + r2 {
                x[i][j] = match (i < r1, j < r1) {
                    (true, true) => x1[i][j].clone(),
                    (false, false) => x2[i - r1][j - r1].clone(),
                    (false, true) => random_fqg(&mut rng, q, n),
                    (true, false) => fqg.zero(),
                };
            }
        }
        let mut m = module_from_matrix(&fqg, &x);
        m.free_basis = None;
        let whole = class_value(s, &char_class(&s.ag, &m).unwrap());
        let parts = s.ag.mul(&class_value(s, &CharClass::from_matrix(&s.ag, x1)), &class_value(s, &CharClass::from_matrix(&s.ag, x2)));
        if whole != parts {
            mult_fail += 1;
        }
        let y = random_matrix(&mut rng, q, n, 1 + k % 2);
        if !fitchar_holds(s, &y) {
            fit_fail += 1;
        }
    }
    let labels: Vec<&str> = ss.iter().map(|s| s.label).collect();
    report(
        4,
        "c_G multiplicative on short exact sequences; Fit = Z(A[G])·Nrd(c_G)",
        mult_fail == 0 && fit_fail == 0,
        start.elapsed(),
        C4_BUDGET,
        &format!("{C4_INSTANCES} instances round-robin over {labels:?}: {mult_fail} + {fit_fail} failures"),
    );
}

#[test]
fn criterion_5_equivariant_formula_and_stickelberger() {
    let start = Instant::now();
    let s = SessionConfig::for_fixture("carlitz-torsion-c2-f3").session().unwrap();
    let opts = Options::default();
    let (cnf, _) = verify_cnf(&s.cover, &s.e, &s.m, C5_PRECISION, &opts).unwrap();
    let mt2 = mt2_check(&s.cover, &s.e, &s.m, C5_PRECISION, &opts).unwrap();
    let mt3 = mt3_check(&s.cover, &s.e, &s.m, C5_PRECISION, &opts).unwrap();
    // polynomiality upgraded to exact: checked below t^{-1} with degree ≤ the bound
    let exact = mt2.samples.iter().all(|p| p.checked_to <= -1 && fqt_core::GroupRing::t_degree(&s_ag(&s), &p.value).unwrap_or(0) <= p.degree_bound);
    let ok = cnf.holds && mt2.holds && mt2.samples.iter().all(|p| p.in_fitting) && mt3.holds && exact;
    report(
        5,
        "C2/F3: class number formula, θ·R(ψ) ∈ Fit(H), ideal equality",
        ok,
        start.elapsed(),
        C5_BUDGET,
        &format!(
            "cnf {}, {} ψ in Fit {}, Hermite equality {} ({:?} = {:?})",
            cnf.holds,
            mt2.samples.len(),
            mt2.holds,
            mt3.holds,
            mt3.stickelberger_ideal.hermite,
            mt3.fitting.hermite
        ),
    );
}

fn s_ag(s: &fqt_core::config::Session) -> AG {
    GroupRing::new(s.cover.a.clone(), s.cover.group.clone())
}

#[test]
fn criterion_6_non_abelian_layer() {
    let start = Instant::now();
    let f = FqField::prime(2).unwrap();
    let g = FiniteGroup::s3();
    let mut dec = DecompositionData::s3_over_f2(&f);
    let v = dec.verify(&g, &f).unwrap();
    let dec_ok = v.ok() && v.pairs_checked == C6_PAIRS && v.dimension == 6;
    let s = Setting { label: "S3/F2", ag: GroupRing::new(PolyRing::new(f.clone()), Arc::new(g)), dec };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut nrd_fail = 0;
    for k in 0..C6_NRD_PAIRS {
        let r = 1 + k % 2;
        let rand_a = |rng: &mut ChaCha8Rng| -> Vec<Vec<Vec<Vec<u32>>>> {
            (0..r)
                .map(|_| (0..r).map(|_| (0..6).map(|_| PolyRing::new(f.clone()).normalize(vec![rng.gen_range(0..2), rng.gen_range(0..2)])).collect()).collect())
                .collect()
        };
        let a = rand_a(&mut rng);
        let b = rand_a(&mut rng);
        let ab = mat_mul(&s.ag, &a, &b);
        let lhs = s.dec.nrd(&s.ag, &ab).unwrap();
        let rhs = s.ag.mul(&s.dec.nrd(&s.ag, &a).unwrap(), &s.dec.nrd(&s.ag, &b).unwrap());
        if lhs != rhs {
            nrd_fail += 1;
        }
    }
    let mut fit_fail = 0;
    for k in 0..C6_MODULES {
        let x = random_matrix(&mut rng, 2, 6, 1 + k % 2);
        if !fitchar_holds(&s, &x) {
            fit_fail += 1;
        }
    }
    report(
        6,
        &format!("{} decomposition, Nrd multiplicativity, Fitchar", s.label),
        dec_ok && nrd_fail == 0 && fit_fail == 0,
        start.elapsed(),
        C6_BUDGET,
        &format!(
            "{} pairs, dimension {} = {:?}; {C6_NRD_PAIRS} Nrd pairs: {nrd_fail} failures; {C6_MODULES} modules: {fit_fail} failures",
            v.pairs_checked, v.dimension, v.block_dimensions
        ),
    );
}

#[test]
fn criterion_7_exponential_certification() {
    let start = Instant::now();
    let mut notes = vec![];
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for name in ["carlitz-f2", "carlitz-f3", "carlitz-torsion-c2-f3", "rank2-f2", "wild-c2-f2"] {
        let s = SessionConfig::for_fixture(name).session().unwrap();
        let c = &s.cover;
        let n = c.g.len() - 1;
        let q = c.fq.q;
        let input_floor = 3 * C7_FLOOR;
        let rand_x = |rng: &mut ChaCha8Rng| -> Vec<LaurentSeries> {
            (0..n)
                .map(|_| LaurentSeries::new(input_floor, (input_floor..=0).map(|_| rng.gen_range(0..q)).collect()))
                .collect()
        };
        let (mut fe, mut eq, mut add) = (0, 0, 0);
        for _ in 0..C7_INPUTS {
            let x = rand_x(&mut rng);
            let y = rand_x(&mut rng);
            let ex = exp_eval(&s.e, c, &x, 2 * C7_FLOOR).unwrap();
            let lhs = exp_eval(&s.e, c, &kinf::scale_poly(c, &[0, 1], &x), C7_FLOOR).unwrap();
            let rhs = apply_twisted_kinf(c, &s.e.phi_t(), &ex);
            if !kinf::agrees(&lhs, &rhs, C7_FLOOR).unwrap() {
                fe += 1;
            }
            for h in 1..c.group.order {
                let hx = exp_eval(&s.e, c, &kinf::act(c, h, &x), C7_FLOOR).unwrap();
                if !kinf::agrees(&hx, &kinf::act(c, h, &ex), C7_FLOOR).unwrap() {
                    eq += 1;
                }
            }
            let ey = exp_eval(&s.e, c, &y, 2 * C7_FLOOR).unwrap();
            let exy = exp_eval(&s.e, c, &kinf::add(c, &x, &y), 2 * C7_FLOOR).unwrap();
            if !kinf::agrees(&exy, &kinf::add(c, &ex, &ey), 2 * C7_FLOOR).unwrap() {
                add += 1;
            }
        }
        ok &= fe == 0 && eq == 0 && add == 0;
        notes.push(format!("{name}: {fe}/{eq}/{add}"));
    }
    report(
        7,
        "exp(t·x) = φ(t)(exp x), G-equivariance, additivity",
        ok,
        start.elapsed(),
        C7_BUDGET,
        &format!("{C7_INPUTS} inputs per fixture to t^{C7_FLOOR}, failures (functional/equivariance/additivity) {}", notes.join(", ")),
    );
}
