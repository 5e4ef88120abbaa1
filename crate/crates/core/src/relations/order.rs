use std::cmp::Ordering;

use num_integer::lcm;

use super::{scan, Goal, Verdict};
use crate::kernel::{eventual_profile, EpStream, RampStream, Result, UpStream};

/// Decides `f ≤* g`, that is `∀∞ n f(n) ≤ g(n)`.
pub fn eval_leq_star(f: &UpStream, g: &UpStream, horizon: u64) -> Verdict {
    if f.describe() == g.describe() {
        return Verdict::True;
    }
    match (f, g) {
        (UpStream::Ep(a), UpStream::Ep(b)) => {
            if let Ok(v) = ep_leq_star(a, b) {
                return v;
            }
        }
        (UpStream::Ramp(a), UpStream::Ramp(b)) => return ramp_leq_star(a, b),
        (UpStream::Ep(_), UpStream::Ramp(_)) => return Verdict::True,
        (UpStream::Ramp(_), UpStream::Ep(_)) => return Verdict::False,
        _ => {}
    }
    if let Some(b) = f.facts().growth.eventually_below(&g.facts().growth) {
        return Verdict::from_bool(b);
    }
    scan(horizon, Goal::Eventually, |n| Ok(f.eval(n)? <= g.eval(n)?))
}

fn ep_leq_star(f: &EpStream, g: &EpStream) -> Result<Verdict> {
    match f.slope().cmp(&g.slope()) {
        Ordering::Less => return Ok(Verdict::True),
        Ordering::Greater => return Ok(Verdict::False),
        Ordering::Equal => {}
    }
    // equal slopes: g − f is periodic once both prefixes are over
    let start = f.prefix().len().max(g.prefix().len()) as u64;
    let period = lcm(f.cycle().len(), g.cycle().len()) as u64;
    for n in start..start + period {
        if f.eval(n)? > g.eval(n)? {
            return Ok(Verdict::False);
        }
    }
    Ok(Verdict::True)
}

fn ramp_leq_star(f: &RampStream, g: &RampStream) -> Verdict {
    // 2·r(n) = α n² + (2β − α) n + 2·start
    let coeffs = |r: &RampStream| {
        (
            r.alpha as i128,
            2 * r.beta as i128 - r.alpha as i128,
            2 * r.start as i128,
        )
    };
    Verdict::from_bool(coeffs(f) <= coeffs(g))
}

/// Decides `f ⊑ g`: all but finitely many `g`-intervals contain an `f`-interval.
pub fn eval_blass_inclusion(f: &UpStream, g: &UpStream, horizon: u64) -> Verdict {
    if f.describe() == g.describe() {
        return Verdict::True;
    }
    if let (UpStream::Ep(a), UpStream::Ep(b)) = (f, g) {
        if let Ok(v) = ep_blass(a, b) {
            return v;
        }
    }
    let f_bounded = f.as_ep().is_some();
    let g_bounded = g.as_ep().is_some();
    if f_bounded && g.facts().divergent() {
        return Verdict::True;
    }
    if f.facts().divergent() && g_bounded {
        return Verdict::False;
    }
    scan(horizon, Goal::Eventually, |n| {
        nests(f, g.eval(n)?, g.eval(n + 1)?)
    })
}

/// Whether some `[f(m), f(m+1))` lies inside `[a, b)`.
fn nests(f: &UpStream, a: u64, b: u64) -> Result<bool> {
    let m = f.index_below(a)?;
    Ok(f.eval(m + 1)? <= b)
}

fn ep_blass(f: &EpStream, g: &EpStream) -> Result<Verdict> {
    let settle = f.eval(f.prefix().len() as u64)?;
    let fu = UpStream::Ep(f.clone());
    let profile = eventual_profile(g, settle, f.cycle_sum(), |a, b| nests(&fu, a, b))?;
    Ok(Verdict::from_bool(profile.cycle.iter().all(|&b| b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{NamedProgram, ProgramStream};
    use crate::relations::DEFAULT_HORIZON;

    fn ep(start: u64, cycle: &[u64]) -> UpStream {
        UpStream::ep(start, vec![], cycle.to_vec()).unwrap()
    }

    #[test]
    fn leq_star_examples() {
        let f = ep(5, &[1]);
        let g = ep(0, &[2]);
        assert_eq!(eval_leq_star(&f, &f, DEFAULT_HORIZON), Verdict::True);
        assert_eq!(eval_leq_star(&f, &g, DEFAULT_HORIZON), Verdict::True);
        assert_eq!(eval_leq_star(&g, &f, DEFAULT_HORIZON), Verdict::False);
        assert_eq!(
            eval_leq_star(&ep(1, &[1, 3]), &ep(0, &[2]), DEFAULT_HORIZON),
            Verdict::False
        );
        assert_eq!(
            eval_leq_star(&ep(0, &[1, 3]), &ep(0, &[2]), DEFAULT_HORIZON),
            Verdict::True
        );
    }

    #[test]
    fn leq_star_quadratics() {
        let sq = UpStream::ramp(0, 2, 1).unwrap();
        let sq_plus = UpStream::ramp(3, 2, 1).unwrap();
        assert_eq!(eval_leq_star(&sq, &sq_plus, DEFAULT_HORIZON), Verdict::True);
        assert_eq!(
            eval_leq_star(&sq_plus, &sq, DEFAULT_HORIZON),
            Verdict::False
        );
        let cubes: UpStream = ProgramStream::named(NamedProgram::Cubes).into();
        assert_eq!(eval_leq_star(&sq, &cubes, DEFAULT_HORIZON), Verdict::True);
        assert_eq!(
            eval_leq_star(&cubes, &ep(0, &[9]), DEFAULT_HORIZON),
            Verdict::False
        );
    }

    #[test]
    fn blass_examples() {
        let id = ep(0, &[1]);
        let twice = ep(0, &[2]);
        assert_eq!(
            eval_blass_inclusion(&twice, &twice, DEFAULT_HORIZON),
            Verdict::True
        );
        assert_eq!(
            eval_blass_inclusion(&id, &twice, DEFAULT_HORIZON),
            Verdict::True
        );
        assert_eq!(
            eval_blass_inclusion(&twice, &id, DEFAULT_HORIZON),
            Verdict::False
        );
        // odd-aligned length-2 intervals never fit the even ones
        assert_eq!(
            eval_blass_inclusion(&ep(1, &[2]), &twice, DEFAULT_HORIZON),
            Verdict::False
        );
        assert_eq!(
            eval_blass_inclusion(&ep(1, &[2]), &ep(0, &[3]), DEFAULT_HORIZON),
            Verdict::True
        );
        let sq = UpStream::ramp(0, 2, 1).unwrap();
        assert_eq!(
            eval_blass_inclusion(&twice, &sq, DEFAULT_HORIZON),
            Verdict::True
        );
        assert_eq!(
            eval_blass_inclusion(&sq, &twice, DEFAULT_HORIZON),
            Verdict::False
        );
    }
}
