//! Closed-form kernels and their first and second derivatives.
//!
//! Three radial kernels are supported:
//!
//! * Gauss `G(x) = exp(−|x|²)` — analytic, differentiable to any order,
//! * Laplace `L(x) = exp(−|x|)` — continuous only; no derivatives at 0,
//! * regularized Laplace `L_r(x) = exp(−√(|x|²+r))` — a smoothed Laplace
//!   kernel whose derivatives are defined everywhere for `r > 0`.
//!
//! A bandwidth δ rescales the argument: `K_δ(v) = K(δ·v)`, so the gradient
//! picks up a factor δ and the Hessian a factor δ².

use crate::error::{Error, Result};
use crate::{Matrix, Vector};

/// Kernel family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    Gauss,
    Laplace,
    RegularizedLaplace,
}

impl KernelFamily {
    pub fn name(&self) -> &'static str {
        match self {
            KernelFamily::Gauss => "gauss",
            KernelFamily::Laplace => "laplace",
            KernelFamily::RegularizedLaplace => "laplace-r",
        }
    }
}

/// Requested derivative depth for a kernel or signature evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EvalOrder {
    Value,
    Gradient,
    Hessian,
}

/// A kernel family plus its parameters.
///
/// `r` is the smoothing offset of the regularized Laplace kernel (ignored by
/// the other families); `delta` is the bandwidth applied as `K(δ·v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub family: KernelFamily,
    pub r: f64,
    pub delta: f64,
}

/// Default smoothing offset used when derivatives of the Laplace family are
/// needed and no explicit `r` is given.
pub const DEFAULT_R: f64 = 1e-6;

impl KernelSpec {
    pub fn gauss() -> Self {
        KernelSpec { family: KernelFamily::Gauss, r: 0.0, delta: 1.0 }
    }

    pub fn laplace() -> Self {
        KernelSpec { family: KernelFamily::Laplace, r: 0.0, delta: 1.0 }
    }

    pub fn regularized_laplace(r: f64) -> Self {
        KernelSpec { family: KernelFamily::RegularizedLaplace, r, delta: 1.0 }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(Error::InvalidSpec(format!("delta must be positive, got {}", self.delta)));
        }
        if self.family == KernelFamily::RegularizedLaplace && (!(self.r > 0.0) || !self.r.is_finite()) {
            return Err(Error::InvalidSpec(format!("r must be positive for laplace-r, got {}", self.r)));
        }
        Ok(())
    }

    /// Kernel value at the origin: 1 for Gauss and Laplace, `exp(−√r)` for L_r.
    pub fn value_at_zero(&self) -> f64 {
        match self.family {
            KernelFamily::Gauss | KernelFamily::Laplace => 1.0,
            KernelFamily::RegularizedLaplace => (-self.r.sqrt()).exp(),
        }
    }

    /// Highest derivative order this spec supports.
    pub fn max_order(&self) -> EvalOrder {
        match self.family {
            KernelFamily::Laplace => EvalOrder::Value,
            _ => EvalOrder::Hessian,
        }
    }

    /// Kernel value at displacement `v`, bandwidth included.
    pub fn value(&self, v: &Vector) -> f64 {
        let q2 = self.delta * self.delta * v.norm_squared();
        match self.family {
            KernelFamily::Gauss => (-q2).exp(),
            KernelFamily::Laplace => (-q2.sqrt()).exp(),
            KernelFamily::RegularizedLaplace => (-(q2 + self.r).sqrt()).exp(),
        }
    }

    /// Evaluate the kernel and, if requested, its gradient and Hessian at
    /// displacement `v`.
    ///
    /// The Hessian is symmetrized as `(H + Hᵀ)/2` before being returned.
    pub fn eval(&self, v: &Vector, order: EvalOrder) -> Result<KernelEval> {
        self.validate()?;
        if order > self.max_order() {
            return Err(Error::DerivativeUnavailable { order: order as u8 });
        }
        let d = v.len();
        let w = v * self.delta;
        let value = self.value(v);

        if order == EvalOrder::Value {
            return Ok(KernelEval { value, gradient: None, hessian: None });
        }

        // Raw derivatives at the scaled argument w; chain-rule factors of
        // delta are applied afterwards.
        let (grad_w, hess_w) = match self.family {
            KernelFamily::Gauss => {
                let e = (-w.norm_squared()).exp();
                let g = &w * (-2.0 * e);
                let h = if order == EvalOrder::Hessian {
                    let mut h = &w * w.transpose() * (4.0 * e);
                    for i in 0..d {
                        h[(i, i)] -= 2.0 * e;
                    }
                    Some(h)
                } else {
                    None
                };
                (g, h)
            }
            KernelFamily::RegularizedLaplace => {
                let q = w.norm_squared() + self.r;
                let s = q.sqrt();
                let e = (-s).exp();
                let g = &w * (-e / s);
                let h = if order == EvalOrder::Hessian {
                    let coeff = e * (1.0 / q + 1.0 / (q * s));
                    let mut h = &w * w.transpose() * coeff;
                    for i in 0..d {
                        h[(i, i)] -= e / s;
                    }
                    Some(h)
                } else {
                    None
                };
                (g, h)
            }
            KernelFamily::Laplace => unreachable!("order checked against max_order"),
        };

        let gradient = grad_w * self.delta;
        let hessian = hess_w.map(|h| {
            let h = h * (self.delta * self.delta);
            (&h + h.transpose()) * 0.5
        });
        Ok(KernelEval { value, gradient: Some(gradient), hessian })
    }
}

/// Result of a kernel evaluation; derivative slots are filled according to
/// the requested [`EvalOrder`].
#[derive(Debug, Clone)]
pub struct KernelEval {
    pub value: f64,
    pub gradient: Option<Vector>,
    pub hessian: Option<Matrix>,
}
