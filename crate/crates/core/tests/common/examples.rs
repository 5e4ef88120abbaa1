//! Worked examples for each construction, shared with the acceptance target.

use interval_tukey::kernel::{MeasurableSet, OmegaSet, RatInterval, Schedule, UpStream, Q};
use interval_tukey::tukey::{bd_forall_spreader, canonical_interleaved_pair};
use interval_tukey::tukey::{
    contract_set, double_count_bound, greedy_mass_points, id_majorant, interleaved_pair,
    interval_partition_of, minima_set, nested_accelerator, range_set, recursive_spreader,
    reindex_stream, scale_values, sparse_selector, unit_blocks,
};

pub struct Example {
    pub op: &'static str,
    pub what: &'static str,
    pub ok: bool,
}

fn ep(start: u64, cycle: &[u64]) -> UpStream {
    UpStream::ep(start, vec![], cycle.to_vec()).unwrap()
}

fn id() -> UpStream {
    UpStream::identity()
}

fn first(f: &UpStream, n: u64) -> Vec<u64> {
    (0..n).map(|i| f.eval(i).unwrap()).collect()
}

fn members(x: &OmegaSet, n: u64) -> Vec<u64> {
    (0..n).map(|i| x.enumerate(i).unwrap()).collect()
}

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

fn ex(op: &'static str, what: &'static str, ok: bool) -> Example {
    Example { op, what, ok }
}

pub fn construction_examples() -> Vec<Example> {
    let squares = UpStream::Program(interval_tukey::kernel::ProgramStream::named(
        interval_tukey::kernel::NamedProgram::Squares,
    ));
    let evens = OmegaSet::evens();
    let omega = OmegaSet::omega();
    let unit_evens = unit_blocks(&evens).unwrap();
    let mut v = vec![
        ex(
            "range_set",
            "2n gives the evens",
            range_set(&ep(0, &[2])).word_strings() == evens.word_strings(),
        ),
        ex(
            "range_set",
            "n gives ω",
            range_set(&id()).word_strings() == omega.word_strings(),
        ),
        ex(
            "range_set",
            "n² gives the squares",
            members(&range_set(&squares), 5) == vec![0, 1, 4, 9, 16],
        ),
        ex(
            "reindex_stream",
            "pairs on n",
            first(&reindex_stream(&id(), Schedule::Arith(2)).unwrap(), 4) == vec![0, 2, 4, 6],
        ),
        ex(
            "reindex_stream",
            "squares on n",
            first(&reindex_stream(&id(), Schedule::Squares).unwrap(), 4) == vec![0, 1, 4, 9],
        ),
        ex(
            "reindex_stream",
            "shift on 2n",
            first(
                &reindex_stream(&ep(0, &[2]), Schedule::Shift(1)).unwrap(),
                3,
            ) == vec![2, 4, 6],
        ),
        ex(
            "scale_values/contract_set",
            "3·n",
            first(&scale_values(&id(), 3).unwrap(), 4) == vec![0, 3, 6, 9],
        ),
        ex(
            "scale_values/contract_set",
            "unit blocks on evens halved",
            {
                let c = contract_set(&unit_evens, 2).unwrap();
                c.measure_in(&q(0, 1), &q(1, 1)) == q(1, 2)
                    && c.contains(&q(1, 4))
                    && !c.contains(&q(3, 4))
            },
        ),
        ex(
            "scale_values/contract_set",
            "motif measure 1 becomes 1/2",
            contract_set(&unit_evens, 2).unwrap().motif_measure() == q(1, 2),
        ),
    ];
    let p = interval_partition_of(&ep(0, &[2]), false).unwrap();
    v.push(ex(
        "interval_partition_of",
        "2n gives blocks [2i, 2i+2)",
        (0..20).all(|x| p.block_of(x).unwrap().0 == x / 2),
    ));
    let pm = interval_partition_of(&ep(1, &[2]), true).unwrap();
    v.push(ex(
        "interval_partition_of",
        "2n+1 merged gives [0,3), [3,5), …",
        pm.blocks_meeting(0, 3).unwrap() == 1
            && pm.blocks_meeting(2, 4).unwrap() == 2
            && pm.blocks_meeting(3, 5).unwrap() == 1,
    ));
    v.push(ex(
        "interval_partition_of",
        "boundaries of 2n are 2n",
        first(&UpStream::Ep(p.boundaries().clone()), 4) == vec![0, 2, 4, 6],
    ));
    v.push(ex(
        "minima_set",
        "blocks of 2n give the evens",
        members(&minima_set(&p).unwrap(), 4) == vec![0, 2, 4, 6],
    ));
    v.push(ex(
        "minima_set",
        "unit windows give ω",
        members(
            &minima_set(&interval_partition_of(&id(), false).unwrap()).unwrap(),
            4,
        ) == vec![0, 1, 2, 3],
    ));
    v.push(ex(
        "minima_set",
        "merged 2n+1 gives 0,3,5,7",
        members(&minima_set(&pm).unwrap(), 4) == vec![0, 3, 5, 7],
    ));
    v.push(ex(
        "sparse_selector",
        "2n gives 0,2,6,14",
        first(&sparse_selector(&ep(0, &[2])).unwrap(), 4) == vec![0, 2, 6, 14],
    ));
    v.push(ex(
        "sparse_selector",
        "n+1 gives 0,3,6,9",
        first(&sparse_selector(&ep(1, &[1])).unwrap(), 4) == vec![0, 3, 6, 9],
    ));
    v.push(ex("sparse_selector", "f(f′(n)) + 1 < f′(n+1)", {
        let f = ep(1, &[1, 2]);
        let s = sparse_selector(&f).unwrap();
        (0..8).all(|n| f.eval(s.eval(n).unwrap()).unwrap() + 1 < s.eval(n + 1).unwrap())
    }));
    v.push(ex(
        "double_count_bound",
        "ω, k=1 gives n+3",
        first(&double_count_bound(&omega, 1).unwrap(), 5) == vec![3, 4, 5, 6, 7],
    ));
    v.push(ex(
        "double_count_bound",
        "evens, k=1 starts at 5",
        double_count_bound(&evens, 1).unwrap().eval(0).unwrap() == 5,
    ));
    v.push(ex("double_count_bound", "strictly increasing", {
        let g = double_count_bound(&OmegaSet::word_from_str("1", "0110").unwrap(), 2).unwrap();
        (0..30).all(|n| g.eval(n).unwrap() < g.eval(n + 1).unwrap())
    }));
    v.push(ex(
        "recursive_spreader",
        "id, k=1 gives 0,2,6,14",
        first(&recursive_spreader(&id(), 1), 4) == vec![0, 2, 6, 14],
    ));
    v.push(ex("recursive_spreader", "differences exceed k", {
        let h = recursive_spreader(&id(), 1);
        (0..6).all(|n| h.eval(n + 1).unwrap() - h.eval(n).unwrap() > 1)
    }));
    v.push(ex(
        "recursive_spreader",
        "id, k=0 gives 0,1,3,7",
        first(&recursive_spreader(&id(), 0), 4) == vec![0, 1, 3, 7],
    ));
    v.push(ex("unit_blocks", "evens give motif [0,1) of period 2", {
        unit_evens.motif() == [RatInterval::new(q(0, 1), q(1, 1)).unwrap()]
            && unit_evens.period() == q(2, 1)
    }));
    v.push(ex("unit_blocks", "ω gives the half-line", {
        let u = unit_blocks(&omega).unwrap();
        u.measure_in(&q(0, 1), &q(7, 1)) == q(7, 1)
            && MeasurableSet::full_line().measure_in(&q(0, 1), &q(7, 1)) == q(7, 1)
    }));
    v.push(ex("unit_blocks", "mass below 2n counts the members", {
        let x = OmegaSet::word_from_str("01", "101").unwrap();
        let u = unit_blocks(&x).unwrap();
        (0..20).all(|n| {
            u.measure_in(&q(0, 1), &q(2 * n, 1))
                == Q::from_integer(x.count_below(2 * n as u64).unwrap() as i128)
        })
    }));
    v.push(ex(
        "greedy_mass_points",
        "half-line gives 0,2,4,…",
        members(&greedy_mass_points(&MeasurableSet::full_line()).unwrap(), 4) == vec![0, 2, 4, 6],
    ));
    let greedy = greedy_mass_points(&unit_evens).unwrap();
    // μ([0,3)) already reaches 2
    v.push(ex(
        "greedy_mass_points",
        "unit blocks on evens give 0,3,7,11",
        members(&greedy, 4) == vec![0, 3, 7, 11],
    ));
    v.push(ex(
        "greedy_mass_points",
        "each point is the least with mass 2",
        (1..6).all(|j| {
            let (a, b) = (
                greedy.enumerate(j - 1).unwrap() as i128,
                greedy.enumerate(j).unwrap() as i128,
            );
            unit_evens.measure_in(&q(a, 1), &q(b, 1)) >= q(2, 1)
                && unit_evens.measure_in(&q(a, 1), &q(b - 1, 1)) < q(2, 1)
        }),
    ));
    v.push(ex(
        "id_majorant",
        "ω gives 0,2,5,9,16",
        first(&id_majorant(&omega), 5) == vec![0, 2, 5, 9, 16],
    ));
    v.push(ex(
        "id_majorant",
        "evens give 0,2,8,18",
        first(&id_majorant(&evens), 4) == vec![0, 2, 8, 18],
    ));
    v.push(ex("id_majorant", "x_{n²} ≤ h(n) with gaps over n", {
        let x = OmegaSet::word_from_str("", "1001").unwrap();
        let h = id_majorant(&x);
        (0..10).all(|n| {
            x.enumerate(n * n).unwrap() <= h.eval(n).unwrap()
                && h.eval(n + 1).unwrap() - h.eval(n).unwrap() > n
        })
    }));
    v.push(ex(
        "nested_accelerator",
        "2n gives 0,2,8,22",
        first(&nested_accelerator(&ep(0, &[2])), 4) == vec![0, 2, 8, 22],
    ));
    v.push(ex(
        "nested_accelerator",
        "n+1 gives 0,2,5,9",
        first(&nested_accelerator(&ep(1, &[1])), 4) == vec![0, 2, 5, 9],
    ));
    v.push(ex("nested_accelerator", "strictly increasing", {
        let h = nested_accelerator(&ep(0, &[1, 3]));
        (0..8).all(|n| h.eval(n).unwrap() < h.eval(n + 1).unwrap())
    }));
    v.push(ex(
        "bd_forall_spreader",
        "n+1 gives 1,3,6,10",
        first(&bd_forall_spreader(&ep(1, &[1])), 4) == vec![1, 3, 6, 10],
    ));
    v.push(ex(
        "bd_forall_spreader",
        "2n gives 0,1,4,11",
        first(&bd_forall_spreader(&ep(0, &[2])), 4) == vec![0, 1, 4, 11],
    ));
    // needs g(m) > m
    v.push(ex("bd_forall_spreader", "step n is at least n+2", {
        let f = bd_forall_spreader(&ep(1, &[1, 2]));
        (0..8).all(|n| f.eval(n + 1).unwrap() - f.eval(n).unwrap() >= n + 2)
    }));
    let (f, g) = canonical_interleaved_pair();
    v.push(ex(
        "interleaved_pair",
        "canonical pair is 2n and 2n+1",
        first(&f, 3) == vec![0, 2, 4] && first(&g, 3) == vec![1, 3, 5],
    ));
    v.push(ex(
        "interleaved_pair",
        "f(n) < g(n) < f(n+1) up to 1000",
        (0..20).all(|s| {
            let (f, g) = interleaved_pair(s);
            (0..1000).all(|n| {
                f.eval(n).unwrap() < g.eval(n).unwrap()
                    && g.eval(n).unwrap() < f.eval(n + 1).unwrap()
            })
        }),
    ));
    v.push(ex("interleaved_pair", "seeds vary the cycles", {
        let shapes: std::collections::BTreeSet<Vec<u64>> =
            (0..20).map(|s| first(&interleaved_pair(s).0, 8)).collect();
        shapes.len() > 1
    }));
    v
}
