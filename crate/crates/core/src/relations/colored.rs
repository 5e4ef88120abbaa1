use super::{scan, Quant, Verdict};
use crate::kernel::{colored_count_profile, Partition, UpStream};

/// Decides `∀∞ n` / `∃∞ n` of "`[f(n), f(n+1))` meets at most `k` blocks of `P`".
pub fn eval_colored_relation(
    f: &UpStream,
    p: &Partition,
    k: u64,
    quant: Quant,
    horizon: u64,
) -> Verdict {
    if f.as_ep().is_some() {
        if let Ok(profile) = colored_count_profile(f, p) {
            return quant.over_cycle(&profile.cycle, |c| *c <= k);
        }
    }
    // blocks never exceed the widest window, so growing intervals meet
    // more and more of them
    if f.facts().divergent() {
        return Verdict::False;
    }
    scan(horizon, quant.goal(), |n| {
        Ok(p.blocks_meeting(f.eval(n)?, f.eval(n + 1)?)? <= k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::EpStream;
    use crate::relations::DEFAULT_HORIZON;

    #[test]
    fn worked_examples() {
        let p = Partition::intervals(EpStream::arithmetic(0, 2).unwrap()).unwrap();
        let id = UpStream::identity();
        assert_eq!(
            eval_colored_relation(&id, &p, 1, Quant::Forall, DEFAULT_HORIZON),
            Verdict::True
        );
        let shifted = UpStream::ep(0, vec![1], vec![2]).unwrap();
        assert_eq!(
            eval_colored_relation(&shifted, &p, 1, Quant::Forall, DEFAULT_HORIZON),
            Verdict::False
        );
        assert_eq!(
            eval_colored_relation(&shifted, &p, 2, Quant::Forall, DEFAULT_HORIZON),
            Verdict::True
        );
        let sq = UpStream::ramp(0, 2, 1).unwrap();
        assert_eq!(
            eval_colored_relation(&sq, &p, 5, Quant::Exists, DEFAULT_HORIZON),
            Verdict::False
        );
    }
}
