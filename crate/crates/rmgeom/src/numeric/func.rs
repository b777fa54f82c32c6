use std::fmt;
use std::sync::Arc;

use super::fd::{d1_central, d2_central};

type F = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar function of one variable with optional analytic derivatives.
/// Missing derivatives fall back to five-point central differences.
#[derive(Clone)]
pub struct Func1D {
    f: F,
    df: Option<F>,
    ddf: Option<F>,
}

impl fmt::Debug for Func1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Func1D")
            .field("analytic_d1", &self.df.is_some())
            .field("analytic_d2", &self.ddf.is_some())
            .finish()
    }
}

impl Func1D {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Func1D {
            f: Arc::new(f),
            df: None,
            ddf: None,
        }
    }

    pub fn constant(c: f64) -> Self {
        Func1D::new(move |_| c)
            .with_d1(|_| 0.0)
            .with_d2(|_| 0.0)
    }

    pub fn with_d1(mut self, df: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.df = Some(Arc::new(df));
        self
    }

    pub fn with_d2(mut self, ddf: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.ddf = Some(Arc::new(ddf));
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn step(x: f64) -> f64 {
        1e-3 * (1.0 + x.abs())
    }

    pub fn d1(&self, x: f64) -> f64 {
        match &self.df {
            Some(df) => df(x),
            None => d1_central(&*self.f, x, Self::step(x)),
        }
    }

    pub fn d2(&self, x: f64) -> f64 {
        match (&self.ddf, &self.df) {
            (Some(ddf), _) => ddf(x),
            (None, Some(df)) => d1_central(&**df, x, Self::step(x)),
            (None, None) => d2_central(&*self.f, x, Self::step(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fallback_derivatives_are_accurate() {
        let f = Func1D::new(|x: f64| x.sin() * x);
        let x = 0.7;
        assert!((f.d1(x) - (x.cos() * x + x.sin())).abs() < 1e-9);
        assert!((f.d2(x) - (2.0 * x.cos() - x * x.sin())).abs() < 1e-6);
    }
}
