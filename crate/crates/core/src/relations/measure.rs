use num_traits::Zero;

use super::{scan, MeasureThreshold, Quant, Verdict};
use crate::kernel::{measure_profile, MeasurableSet, UpStream};

fn mass(f: &UpStream, y: &MeasurableSet, n: u64) -> crate::kernel::Result<crate::kernel::Q> {
    let a = f.eval(n)?;
    let b = f.eval(n + 1)?;
    Ok(y.measure_in(&(a as i128).into(), &(b as i128).into()))
}

/// Decides the measure relations for `μ_n = μ([f(n), f(n+1)) ∩ Y)`.
///
/// `Sum` is the single statement `Σ μ_n < ∞`; the quantifier is ignored.
pub fn eval_measure_relation(
    f: &UpStream,
    y: &MeasurableSet,
    t: &MeasureThreshold,
    quant: Quant,
    horizon: u64,
) -> Verdict {
    match (t, quant) {
        // the intervals tile [f(0), ∞), which has infinite measure in Y
        (MeasureThreshold::Sum, _) => return Verdict::False,
        // each period of Y holds a fixed positive mass split among boundedly
        // many unit-or-longer intervals, so μ_n does not tend to 0
        (MeasureThreshold::VecEps(_), Quant::Forall) => return Verdict::False,
        _ => {}
    }
    if f.as_ep().is_some() {
        if let Ok(p) = measure_profile(f, y) {
            return match t {
                MeasureThreshold::ConstEps(eps) => quant.over_cycle(&p.cycle, |m| m <= eps),
                // ε_n → 0, so only zero masses can keep up
                _ => quant.over_cycle(&p.cycle, |m| m.is_zero()),
            };
        }
    }
    if f.facts().divergent() {
        return Verdict::False;
    }
    scan(horizon, quant.goal(), |n| {
        let m = mass(f, y, n)?;
        Ok(match t {
            MeasureThreshold::ConstEps(eps) => m <= *eps,
            MeasureThreshold::VecEps(seq) => m <= seq.at(n),
            MeasureThreshold::Sum => unreachable!(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{RatInterval, Q};
    use crate::relations::{EpsSequence, DEFAULT_HORIZON};

    fn unit_evens() -> MeasurableSet {
        MeasurableSet::new(
            vec![],
            vec![RatInterval::new(Q::zero(), Q::from_integer(1)).unwrap()],
            Q::zero(),
            Q::from_integer(2),
        )
        .unwrap()
    }

    #[test]
    fn worked_examples() {
        let id = UpStream::identity();
        let full = MeasurableSet::full_line();
        let eps = |p, q| MeasureThreshold::ConstEps(Q::new(p, q));
        let run =
            |t: &MeasureThreshold, q| eval_measure_relation(&id, &full, t, q, DEFAULT_HORIZON);
        assert_eq!(run(&eps(1, 1), Quant::Forall), Verdict::True);
        assert_eq!(run(&eps(1, 2), Quant::Forall), Verdict::False);
        assert_eq!(run(&MeasureThreshold::Sum, Quant::Forall), Verdict::False);
    }

    #[test]
    fn vanishing_thresholds() {
        let id = UpStream::identity();
        let seq = MeasureThreshold::VecEps(EpsSequence::Geometric {
            first: Q::from_integer(1),
            ratio: Q::new(1, 2),
        });
        let y = unit_evens();
        assert_eq!(
            eval_measure_relation(&id, &y, &seq, Quant::Forall, 100),
            Verdict::False
        );
        assert_eq!(
            eval_measure_relation(&id, &y, &seq, Quant::Exists, 100),
            Verdict::True
        );
        let twice = UpStream::ep(0, vec![], vec![2]).unwrap();
        assert_eq!(
            eval_measure_relation(&twice, &y, &seq, Quant::Exists, 100),
            Verdict::False
        );
    }
}
