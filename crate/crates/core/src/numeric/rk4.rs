use serde::Serialize;

use super::{CompiledField, NumericError, Result};
use crate::calculus::{LogIntegral, VectorField3};

/// Denominators smaller than this abort the integration.
const MIN_DEN: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<[f64; 3]>,
    pub h: f64,
}

impl Trajectory {
    pub fn last(&self) -> [f64; 3] {
        *self.states.last().expect("trajectory has its initial state")
    }
}

fn axpy(x: &[f64; 3], a: f64, k: &[f64; 3]) -> [f64; 3] {
    [x[0] + a * k[0], x[1] + a * k[1], x[2] + a * k[2]]
}

/// Classical fixed-step RK4 from `x0` to `t_end`. The step is shrunk to
/// `t_end / ceil(t_end / h)` so the last sample lands on `t_end`.
pub fn rk4_integrate(v: &VectorField3, x0: [f64; 3], t_end: f64, h: f64) -> Result<Trajectory> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(NumericError::InvalidStep(h));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(NumericError::InvalidStep(t_end));
    }
    let field = CompiledField::new(v);
    let steps = (t_end / h).ceil().max(0.0) as usize;
    let h = if steps == 0 { h } else { t_end / steps as f64 };
    let mut traj = Trajectory { times: vec![0.0], states: vec![x0], h };
    let mut x = x0;
    let singular = |k: usize| NumericError::Singular { time: (k + 1) as f64 * h, last_safe_time: k as f64 * h };
    if field.eval(&x, MIN_DEN).is_none() {
        return Err(NumericError::Singular { time: 0.0, last_safe_time: 0.0 });
    }
    for k in 0..steps {
        let f = |p: &[f64; 3]| field.eval(p, MIN_DEN).ok_or_else(|| singular(k));
        let k1 = f(&x)?;
        let k2 = f(&axpy(&x, h / 2.0, &k1))?;
        let k3 = f(&axpy(&x, h / 2.0, &k2))?;
        let k4 = f(&axpy(&x, h, &k3))?;
        for i in 0..3 {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if !x.iter().all(|c| c.is_finite()) {
            return Err(singular(k));
        }
        traj.times.push((k + 1) as f64 * h);
        traj.states.push(x);
    }
    Ok(traj)
}

/// `max_t |H(x(t)) − H(x(0))| / max(1, |H(x(0))|)`.
pub fn conservation_drift(h: &LogIntegral, traj: &Trajectory) -> Result<f64> {
    let eval = |i: usize| {
        h.eval_f64(&traj.states[i])
            .ok()
            .filter(|v| v.is_finite())
            .ok_or(NumericError::SingularIntegral { time: traj.times[i] })
    };
    let h0 = eval(0)?;
    let scale = h0.abs().max(1.0);
    let mut drift = 0.0f64;
    for i in 1..traj.states.len() {
        drift = drift.max((eval(i)? - h0).abs() / scale);
    }
    Ok(drift)
}

/// Observed order `log2(|y_h − y_{h/2}| / |y_{h/2} − y_{h/4}|)` of the
/// endpoint error.
pub fn convergence_order(v: &VectorField3, x0: [f64; 3], t_end: f64, h: f64) -> Result<f64> {
    let end = |h: f64| rk4_integrate(v, x0, t_end, h).map(|t| t.last());
    let (a, b, c) = (end(h)?, end(h / 2.0)?, end(h / 4.0)?);
    let dist = |p: &[f64; 3], q: &[f64; 3]| (0..3).map(|i| (p[i] - q[i]).powi(2)).sum::<f64>().sqrt();
    Ok((dist(&a, &b) / dist(&b, &c)).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Chart, RationalFunction};

    fn vars() -> [RationalFunction; 3] {
        let c = Chart::xyz();
        [0, 1, 2].map(|i| RationalFunction::var(&c, i))
    }

    #[test]
    fn harmonic_oscillator_period() {
        let [x, y, _] = vars();
        let v = VectorField3::new([y.clone(), -&x, RationalFunction::zero(x.chart())]);
        let t = rk4_integrate(&v, [1.0, 0.0, 0.0], 2.0 * std::f64::consts::PI, 1e-3).unwrap();
        let end = t.last();
        assert!((end[0] - 1.0).abs() < 1e-8 && end[1].abs() < 1e-8 && end[2] == 0.0, "{end:?}");
        assert_eq!(t.times.len(), t.states.len());
    }

    #[test]
    fn zero_field_is_constant() {
        let c = Chart::xyz();
        let t = rk4_integrate(&VectorField3::zero(&c), [0.5, -2.0, 3.0], 1.0, 0.1).unwrap();
        assert!(t.states.iter().all(|s| *s == [0.5, -2.0, 3.0]));
        let x = LogIntegral::rational(RationalFunction::var(&c, 0));
        assert_eq!(conservation_drift(&x, &t).unwrap(), 0.0);
    }

    #[test]
    fn singularity_aborts() {
        // x decreases at unit speed and the second component is 1/x; with
        // h = 1/8 a stage lands exactly on x = 0 during the step ending at t = 1.
        let [x, _, _] = vars();
        let c = Chart::xyz();
        let v = VectorField3::new([RationalFunction::from_int(&c, -1), x.inv().unwrap(), RationalFunction::zero(&c)]);
        let err = rk4_integrate(&v, [1.0, 0.0, 0.0], 2.0, 0.125).unwrap_err();
        assert_eq!(err, NumericError::Singular { time: 1.0, last_safe_time: 0.875 });
        assert_eq!(rk4_integrate(&v, [1.0, 0.0, 0.0], 1.0, 0.0), Err(NumericError::InvalidStep(0.0)));
    }
}
