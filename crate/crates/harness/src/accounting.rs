//! Regret bookkeeping: running loss, best-comparator mistakes and the rows
//! written to CSV.

use lol_core::learners::Trace;
use lol_core::{HypothesisClass, Label, Point};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResultRow {
    pub trial: usize,
    pub t: usize,
    pub loss: f64,
    pub cum_loss: f64,
    pub opt: f64,
    pub regret: f64,
    pub bound: f64,
}

/// Builds the rows of one trial, keeping `regret = cum_loss - opt`.
#[derive(Clone, Debug)]
pub struct RowBuilder {
    trial: usize,
    t: usize,
    cum: f64,
    rows: Vec<ResultRow>,
}

impl RowBuilder {
    pub fn new(trial: usize) -> Self {
        RowBuilder { trial, t: 0, cum: 0.0, rows: Vec::new() }
    }

    pub fn push(&mut self, loss: f64, opt: f64, bound: f64) -> ResultRow {
        self.t += 1;
        self.cum += loss;
        let row = ResultRow { trial: self.trial, t: self.t, loss, cum_loss: self.cum, opt, regret: self.cum - opt, bound };
        self.rows.push(row);
        row
    }

    pub fn cumulative_loss(&self) -> f64 {
        self.cum
    }

    pub fn last(&self) -> Option<&ResultRow> {
        self.rows.last()
    }

    pub fn into_rows(self) -> Vec<ResultRow> {
        self.rows
    }
}

/// Incremental mistake counters for a finite set of comparators.
#[derive(Clone, Debug)]
pub struct MistakeCounters {
    counts: Vec<usize>,
}

impl MistakeCounters {
    pub fn new(comparators: usize) -> Self {
        MistakeCounters { counts: vec![0; comparators] }
    }

    /// Charges comparator `i` when `missed(i)` holds, then returns the best count.
    pub fn observe(&mut self, mut missed: impl FnMut(usize) -> bool) -> usize {
        for (i, c) in self.counts.iter_mut().enumerate() {
            if missed(i) {
                *c += 1;
            }
        }
        self.best()
    }

    /// Best count so far; 0 with no comparators.
    pub fn best(&self) -> usize {
        self.counts.iter().copied().min().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }
}

/// Running `opt` over the hypotheses of a class.
#[derive(Clone, Debug)]
pub struct ClassOpt<'a> {
    class: &'a HypothesisClass,
    counters: MistakeCounters,
}

impl<'a> ClassOpt<'a> {
    pub fn new(class: &'a HypothesisClass) -> Self {
        ClassOpt { class, counters: MistakeCounters::new(class.len()) }
    }

    pub fn observe(&mut self, x: Point, y: Label) -> usize {
        let hs = self.class.hypotheses();
        self.counters.observe(|i| !hs[i].contains(x, y))
    }
}

/// Rows for a finished trace with the best hypothesis of `class` as comparator.
pub fn regret_accounting(
    trace: &Trace,
    class: &HypothesisClass,
    trial: usize,
    mut bound: impl FnMut(usize) -> f64,
) -> Vec<ResultRow> {
    let mut opt = ClassOpt::new(class);
    let mut rows = RowBuilder::new(trial);
    for r in trace.rounds() {
        let best = opt.observe(r.x, r.y);
        rows.push(r.loss, best as f64, bound(r.t));
    }
    rows.into_rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lol_core::learners::{run_deterministic, pattern_stream, ConstantListLearner};
    use lol_core::{LabelList, Pattern};

    #[test]
    fn prefix_opt_matches_recomputation() {
        let class = HypothesisClass::from_table(&[vec![0, 1], vec![1, 1], vec![2, 0]], 2, 3).unwrap();
        let s = Pattern::from_pairs(&[(0, 2), (1, 1), (0, 1), (1, 0), (0, 0), (0, 2), (1, 2)]);
        let mut learner = ConstantListLearner::new(LabelList::first(1), 3);
        let trace = run_deterministic(&mut learner, pattern_stream(&s)).unwrap();
        let rows = regret_accounting(&trace, &class, 0, |_| 0.0);
        for (i, row) in rows.iter().enumerate() {
            let prefix: Pattern = s[..=i].iter().copied().collect();
            assert_eq!(row.opt as usize, class.opt(&prefix).unwrap());
            assert_eq!(row.regret, row.cum_loss - row.opt);
        }
        assert_eq!(rows.last().unwrap().cum_loss, trace.cumulative_loss());
    }

    #[test]
    fn realizable_trace_has_zero_opt() {
        let class = HypothesisClass::from_table(&[vec![2, 0]], 2, 3).unwrap();
        let s = Pattern::from_pairs(&[(0, 2), (1, 0), (0, 2)]);
        let mut learner = ConstantListLearner::new(LabelList::first(2), 3);
        let trace = run_deterministic(&mut learner, pattern_stream(&s)).unwrap();
        assert!(regret_accounting(&trace, &class, 0, |_| 0.0).iter().all(|r| r.opt == 0.0));
    }
}
