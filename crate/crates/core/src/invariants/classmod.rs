//! H(E/M) = K_∞/(M + exp(K_∞)) = V_fin / image of exp.
//!
//! The images S_m = exp(B_m) mod (M + D) increase with m. If S_{m+1} = S_m
//! then exp(B_{m+2}) = φ(t)·exp(B_{m+1}) lies in φ(t)·(exp(B_m) + M + D),
//! and φ(t)·D = exp(t·D) ⊆ exp(B_{m+1}), so the image is stable from m on.
//! φ(t) acts on H through any lift: it preserves M and sends D into exp(K_∞).

use serde::Serialize;

use super::ball::Ball;
use crate::base_algebra::linalg::{rank, rref};
use crate::base_algebra::ring::{mat_add, transpose, zero_mat};
use crate::base_algebra::{smith_invariants, FqPoly, InvariantFactors, Mat, Ring};
use crate::drinfeld::module::poly_at_matrix;
use crate::error::{Error, Result};
use crate::function_field::FiniteAGModule;
use crate::group_algebra::decomposition::DecompositionData;
use crate::group_algebra::freeness::{ct_free_basis, DEFAULT_SEED};
use crate::group_algebra::{fitting_ideal, CentralIdeal, AG};
use crate::lseries::{char_class, CharClass};

pub const STABILIZATION_BUDGET: i64 = 24;

#[derive(Clone, Debug, Serialize)]
pub struct ClassModule {
    pub ball_index: usize,
    /// m with S_{m+1} = S_m
    pub stable_at: i64,
    /// dim S_0, dim S_1, …
    pub image_dims: Vec<usize>,
    pub fin_dim: usize,
    /// t acts as φ_E(t); basis: the listed V_fin coordinates
    pub module: FiniteAGModule,
    pub invariant_factors: InvariantFactors,
    pub fq_free: bool,
    pub cohomologically_trivial: bool,
    pub char_class: Option<CharClass>,
}

impl ClassModule {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// c_G(H) ∈ A[G]; 1 for H = 0.
    pub fn char_value(&self, ag: &AG) -> Option<Vec<FqPoly>> {
        if self.is_zero() {
            return Some(ag.one());
        }
        self.char_class.as_ref().and_then(|c| c.value.clone())
    }

    /// Fit_{A[G]}(H) from the square presentation t·I − X.
    pub fn fitting(&self, ag: &AG, dec: &DecompositionData) -> Result<CentralIdeal> {
        if self.is_zero() {
            return Ok(CentralIdeal::unit(ag));
        }
        let cc = self
            .char_class
            .as_ref()
            .ok_or_else(|| Error::HypothesisViolated("H is not F_q[G]-free, so no square presentation is available".into()))?;
        fitting_ideal(ag, &cc.relation_matrix(ag), dec)
    }

    /// Does x ∈ A[G] act as zero on H?
    pub fn annihilated_by(&self, ag: &AG, x: &[FqPoly]) -> bool {
        let f = ag.fq();
        let d = self.dim();
        let mut acc = zero_mat(f, d, d);
        for (h, p) in x.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let pt = poly_at_matrix(f, p, &self.module.t_action);
            acc = mat_add(f, &acc, &crate::base_algebra::ring::mat_mul(f, &pt, &self.module.g_action[h]));
        }
        acc.iter().flatten().all(|&c| c == 0)
    }
}

/// Reduces vectors of V_fin modulo a subspace given by its rref rows.
struct Quotient {
    red: Mat<u32>,
    piv: Vec<usize>,
    free: Vec<usize>,
}

impl Quotient {
    fn new(ball: &Ball, image: &Mat<u32>) -> Self {
        let f = &ball.view.fq;
        let d = ball.fin_dim();
        let rows = transpose(image);
        let (red, piv) = if rows.is_empty() { (vec![], vec![]) } else { rref(f, &rows) };
        let red = red.into_iter().take(piv.len()).collect();
        let free = (0..d).filter(|c| !piv.contains(c)).collect();
        Quotient { red, piv, free }
    }

    fn reduce(&self, f: &crate::base_algebra::FqField, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for (row, &p) in self.red.iter().zip(&self.piv) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub_e(*x, f.mul_e(c, y));
                }
            }
        }
        self.free.iter().map(|&i| v[i]).collect()
    }

    /// Matrix of an endomorphism of V_fin (columns = images) on the quotient.
    fn induced(&self, f: &crate::base_algebra::FqField, m: &Mat<u32>) -> Mat<u32> {
        let cols: Vec<Vec<u32>> = self.free.iter().map(|&c| self.reduce(f, &m.iter().map(|r| r[c]).collect::<Vec<_>>())).collect();
        transpose(&cols)
    }
}

/// H(E/M) on the ball of `ball`, stabilizing exp images within `budget`.
pub fn class_module(ball: &mut Ball, ag: &AG, budget: i64) -> Result<ClassModule> {
    let f = ball.view.fq.clone();
    let n = ball.rank();
    let d = ball.fin_dim();
    let mut image_dims = vec![];
    let mut found = None;
    for m in 0..=budget {
        let (_, eps) = ball.exp_matrix(m)?;
        let r = if d == 0 { 0 } else { rank(&f, &eps) };
        image_dims.push(r);
        if m > 0 && image_dims[m as usize - 1] == r {
            found = Some((m - 1, eps));
            break;
        }
    }
    let (stable_at, image) = found.ok_or_else(|| {
        Error::StabilizationBudgetExceeded(format!("exp images still growing at ball {budget}: dims {image_dims:?}"))
    })?;
    // confirmation step
    let (_, next) = ball.exp_matrix(stable_at + 2)?;
    let r = if d == 0 { 0 } else { rank(&f, &next) };
    if r != image_dims[stable_at as usize] {
        return Err(Error::StabilizationBudgetExceeded(format!("image grew again at ball {}: dims {image_dims:?} then {r}", stable_at + 2)));
    }
    let quo = Quotient::new(ball, &image);
    let t_full = ball.amb.operator(&ball.e.phi_t(), ball.m0, ball.m0);
    let t_action = quo.induced(&f, &t_full);
    let g_action: Vec<Mat<u32>> = ball
        .amb
        .g_action
        .iter()
        .map(|g| {
            let mut full = vec![vec![0u32; d]; d];
            for k in 0..ball.m0.saturating_sub(1) {
                for r in 0..n {
                    for c in 0..n {
                        full[k * n + r][k * n + c] = g[r][c];
                    }
                }
            }
            quo.induced(&f, &full)
        })
        .collect();
    let mut module = FiniteAGModule::new(&f, ball.view.group.clone(), t_action.clone(), g_action, None);
    module.labels = quo.free.iter().map(|&x| format!("t^-{}·m{}", x / n + 1, x % n)).collect();
    module.validate()?;
    let a = &ball.view.a;
    let h = t_action.len();
    let rel: Mat<FqPoly> = (0..h)
        .map(|c| {
            (0..h)
                .map(|r| {
                    let x = a.constant(f.neg_e(t_action[r][c]));
                    if r == c {
                        a.add(&x, &a.t())
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let invariant_factors = smith_invariants(a, &rel);
    let (fq_free, cc) = match ct_free_basis(&module, DEFAULT_SEED) {
        Ok(b) => {
            module.free_basis = Some(b);
            (true, Some(char_class(ag, &module)?))
        }
        Err(Error::NotFree(_)) => (false, None),
        Err(e) => return Err(e),
    };
    let ell = f.ell as usize;
    Ok(ClassModule {
        ball_index: ball.m0,
        stable_at,
        image_dims,
        fin_dim: d,
        module,
        invariant_factors,
        fq_free,
        cohomologically_trivial: fq_free || ball.view.group.order % ell != 0,
        char_class: cc,
    })
}
