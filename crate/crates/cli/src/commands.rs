use fqt_core::config::{fixture, Session, FIXTURES};
use fqt_core::error::AtStage;
use fqt_core::invariants::checks::{self, Options};
use fqt_core::invariants::{class_module as compute_h, unit_lattice, Ball};
use fqt_core::lseries::{prime_cutoff, stickelberger as theta_elem, theta_with_bound};
use fqt_core::nuclear::{min_ball, phi_e_sequence, trace_formula_with_bound};
use fqt_core::{Error, GroupRing};
use serde_json::json;

use crate::report::{group_poly, poly, series, Certification, Report};
use crate::Global;

pub struct Ctx {
    pub session: Session,
    pub global: Global,
}

impl Ctx {
    fn n(&self) -> usize {
        self.session.config.precision
    }

    fn fixture(&self) -> Option<String> {
        self.session.config.fixture.clone()
    }

    fn options(&self) -> Options {
        let mut o = self.session.config.options();
        o.prime_bound = self.global.prime_bound_override;
        o
    }

    fn prime_bound(&self) -> (usize, bool) {
        let certified = prime_cutoff(self.n(), self.session.e.rank());
        match self.global.prime_bound_override {
            Some(b) => (b, b >= certified),
            None => (certified, true),
        }
    }

    fn cert(&self) -> Certification {
        let (b, ok) = self.prime_bound();
        Certification {
            precision: self.n(),
            prime_bound: Some(b),
            prime_bound_certified: Some(ok),
            ball_index: self.session.config.ball,
            floors: vec![("verdict floor".into(), -(self.n() as i64))],
            steps: vec![],
            seed: self.session.config.seed,
            low_confidence: -(self.n() as i64) > checks::LOW_CONFIDENCE_FLOOR,
        }
    }

    fn ball(&self, floor: i64) -> Result<Ball, Error> {
        let s = &self.session;
        Ball::new(&s.cover, &s.m.lattice, &s.e, s.config.ball, floor).at("ball")
    }
}

pub fn lvalue(c: &Ctx) -> Result<Report, Error> {
    let s = &c.session;
    let (bound, certified) = c.prime_bound();
    let th = theta_with_bound(&s.cover, &s.e, &s.m, c.n(), bound).at("L-value")?;
    let value = th.value.as_ref().map(|v| series(v, 8)).unwrap_or_else(|| "non-abelian G: see the factors".into());
    Ok(Report::new("lvalue", certified, c.fixture(), c.cert(), &th)
        .line(format!("primes        {}", th.primes.len()))
        .line(format!("Θ             {value}"))
        .line(format!("monic         {}", th.monic)))
}

pub fn units(c: &Ctx) -> Result<Report, Error> {
    let s = &c.session;
    let mut b = c.ball(-(c.n() as i64) - 6)?;
    let u = unit_lattice(&mut b, s.config.seed).at("units")?;
    let chk = u.recheck(&b).at("units")?;
    let mut cert = c.cert();
    cert.prime_bound = None;
    cert.prime_bound_certified = None;
    cert.ball_index = Some(u.ball_index);
    cert.floors = vec![("unit floor".into(), u.floor), ("recheck floor".into(), chk.floor)];
    cert.steps = vec![("U = K_m at m".into(), u.certified_at)];
    let gens = match &u.free_generators {
        Some(g) => g.iter().map(|w| format!("[{}]", w.iter().map(poly).collect::<Vec<_>>().join(", "))).collect::<Vec<_>>().join(" "),
        None => "none found".into(),
    };
    let mut r = Report::new("units", chk.ok(), c.fixture(), cert, json!({ "units": &u, "check": &chk }))
        .line(format!("A-rank        {} (rank check {})", u.rank, chk.rank_ok))
        .line(format!("A[G]-basis    {gens}"));
    for (i, v) in u.basis.iter().enumerate() {
        r = r.line(format!("u{i} top       t^{} (integral {}, t-stable {})", u.tops[i], chk.integral[i], chk.t_stable[i]));
        for (j, x) in v.iter().enumerate() {
            r = r.line(format!("  m{j}: {}", x.display()));
        }
    }
    Ok(r)
}

pub fn class_module(c: &Ctx) -> Result<Report, Error> {
    let s = &c.session;
    let ag = GroupRing::new(s.cover.a.clone(), s.cover.group.clone());
    let mut b = c.ball(-8)?;
    let h = compute_h(&mut b, &ag, s.config.budget).at("class module")?;
    let order_exp: usize = h.invariant_factors.nontrivial().iter().map(|f| f.len() - 1).sum();
    let consistent = order_exp == h.dim();
    let mut cert = c.cert();
    cert.prime_bound = None;
    cert.prime_bound_certified = None;
    cert.ball_index = Some(h.ball_index);
    cert.floors = vec![];
    cert.steps = vec![("stable at m".into(), h.stable_at)];
    cert.low_confidence = false;
    let factors: Vec<String> = h.invariant_factors.nontrivial().iter().map(poly).collect();
    Ok(Report::new("class-module", consistent, c.fixture(), cert, &h)
        .line(format!("dim_Fq H      {} (|H| = q^{})", h.dim(), h.dim()))
        .line(format!("A-factors     {}", if factors.is_empty() { "none (H = 0)".into() } else { factors.join(", ") }))
        .line(format!("image dims    {:?}", h.image_dims))
        .line(format!("F_q[G]-free   {}", h.fq_free))
        .line(format!("c.t.          {}", h.cohomologically_trivial)))
}

pub fn verify_cnf(c: &Ctx) -> Result<Report, Error> {
    let s = &c.session;
    let (rep, st) = checks::verify_cnf(&s.cover, &s.e, &s.m, c.n(), &c.options())?;
    let (_, certified) = c.prime_bound();
    let mut cert = c.cert();
    cert.ball_index = Some(st.ball.m0);
    cert.floors.push(("unit floor".into(), rep.unit_floor));
    cert.floors.push(("volume floor".into(), st.volume.floor));
    cert.steps = vec![("U = K_m at m".into(), rep.units_certified_at), ("H stable at m".into(), rep.h_stable_at)];
    let diff = rep.first_difference.map(|e| format!("first difference at t^{e}")).unwrap_or_else(|| "agree on the window".into());
    let factors: Vec<String> = rep.h_factors.iter().map(poly).collect();
    Ok(Report::new("verify-cnf", rep.holds && certified, c.fixture(), cert, &rep)
        .line(format!("dim_Fq H      {}{}", rep.h_dim, if factors.is_empty() { String::new() } else { format!(" ({})", factors.join(", ")) }))
        .line(format!("Θ             {}", series(&rep.lhs, 8)))
        .line(format!("volume class  {}", series(&rep.rhs, 8)))
        .line(diff))
}

pub fn trace_formula(c: &Ctx) -> Result<Report, Error> {
    let s = &c.session;
    let seq = phi_e_sequence(&s.e, c.n()).at("nuclear sequence")?;
    let i = match s.config.trace_ball {
        Some(i) => i,
        None => min_ball(&s.cover, &s.m.lattice, &seq.terms).at("nucleus")?,
    };
    let certified = seq.prime_bound();
    let bound = c.global.prime_bound_override.unwrap_or(certified);
    let rep = trace_formula_with_bound(&seq, &s.cover, &s.m, i, &s.dec, bound).at("trace formula")?;
    let mut cert = c.cert();
    cert.prime_bound = Some(bound.saturating_sub(1));
    cert.prime_bound_certified = Some(bound >= certified);
    cert.ball_index = Some(i);
    cert.floors = vec![];
    cert.steps = vec![("mod Z^N, N".into(), c.n() as i64)];
    cert.low_confidence = false;
    let mut r = Report::new("trace-formula", rep.holds && bound >= certified, c.fixture(), cert, &rep)
        .line(format!("primes        {} (deg p < {})", rep.primes.len(), rep.prime_bound))
        .line(format!("product = 1   {}", rep.product.is_one(&s.dec)))
        .line(format!("ball-stable   {}", rep.rhs == rep.rhs_larger_ball));
    if !rep.holds {
        r = r.line(format!("lhs {:?}", rep.lhs)).line(format!("rhs {:?}", rep.rhs));
    }
    Ok(r)
}

pub fn stickelberger(c: &Ctx) -> Result<Report, Error> {
    let s = &c.session;
    let ag = GroupRing::new(s.cover.a.clone(), s.cover.group.clone());
    let (bound, certified) = c.prime_bound();
    let th = theta_with_bound(&s.cover, &s.e, &s.m, c.n(), bound).at("L-value")?;
    let el = theta_elem(&ag, &th, &s.dec).at("Stickelberger element")?;
    Ok(Report::new("stickelberger", certified, c.fixture(), c.cert(), &el)
        .line(format!("decomposition {}", s.dec.label))
        .line(format!("θ             {}", series(&el.value, 8))))
}

pub fn mt2(c: &Ctx) -> Result<Report, Error> {
    let s = &c.session;
    let rep = checks::mt2_check(&s.cover, &s.e, &s.m, c.n(), &c.options())?;
    let (_, certified) = c.prime_bound();
    let mut cert = c.cert();
    cert.low_confidence = rep.low_confidence;
    let mut r = Report::new("mt2", rep.holds && certified, c.fixture(), cert, &rep)
        .line(format!("Fit(H)        ({})", rep.fitting.hermite.iter().map(|x| group_poly(x)).collect::<Vec<_>>().join(", ")))
        .line(format!("Fit ⊆ Fit(O_K) {}", opt(rep.fit_in_fit_ok)))
        .line(format!("Fit ⊆ Ann     {}", opt(rep.fit_in_ann)))
        .line(format!("R nontrivial  {}", rep.r_nontrivial));
    for p in &rep.samples {
        r = r.line(format!("ψ = {:<10} θ·R(ψ) = {}  ∈ Fit: {}", p.label, group_poly(&p.value), p.in_fitting));
    }
    for n in &rep.notes {
        r = r.line(n);
    }
    Ok(r)
}

pub fn mt3(c: &Ctx) -> Result<Report, Error> {
    let s = &c.session;
    let rep = checks::mt3_check(&s.cover, &s.e, &s.m, c.n(), &c.options())?;
    let (_, certified) = c.prime_bound();
    let mut cert = c.cert();
    cert.low_confidence = rep.low_confidence;
    let show = |i: &fqt_core::CentralIdeal| i.hermite.iter().map(|x| group_poly(x)).collect::<Vec<_>>().join(", ");
    Ok(Report::new("mt3", rep.holds && certified, c.fixture(), cert, &rep)
        .line(format!("(θ·R(ψ))      ({})", show(&rep.stickelberger_ideal)))
        .line(format!("Fit(H)        ({})", show(&rep.fitting))))
}

fn opt(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_else(|| "not computed".into())
}

pub fn fixtures(g: &Global, list: bool, show: Option<&str>) -> Result<bool, Error> {
    if list {
        if g.json {
            let v: Vec<_> = FIXTURES.iter().map(|f| json!({ "name": f.name, "summary": f.summary })).collect();
            println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
        } else {
            for f in FIXTURES {
                println!("{:<24} {}", f.name, f.summary);
            }
        }
        return Ok(true);
    }
    let f = fixture(show.expect("show has a name"))?;
    print!("# {}\n{}", f.summary, f.config().to_toml());
    if let Some((grp, mut dec)) = f.decomposition_demo() {
        let fq = fqt_core::FqField::prime(2)?;
        let rep = dec.verify(&grp, &fq)?;
        println!(
            "# decomposition {}: {} pairs checked, dimension {} = {:?}, {}",
            dec.label,
            rep.pairs_checked,
            rep.dimension,
            rep.block_dimensions,
            if rep.ok() { "verified".to_string() } else { rep.violations.join("; ") }
        );
        return Ok(rep.ok());
    }
    Ok(true)
}
