//! Listing halfspaces: the version space of a sample with polynomial delay,
//! all halfspaces in `2^ω · poly(n)` time, and the counting bound.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_rational::Ratio;
use serde::Serialize;

use crate::consistency::{CheckError, ConsistencyChecker, LabeledSample};
use crate::graph::{clique_number, complement_induced, Graph};
use crate::shadow::{cutset, is_halfspace, triangle_set, Halfspace, ShadowTable};
use crate::vertex_set::VertexSet;

/// Counters from a version-space listing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ListStats {
    pub emitted: usize,
    /// Consistency checks performed in total.
    pub checks: usize,
    /// Most checks performed between two consecutive emissions (or before the
    /// first one, or after the last one).
    pub max_checks_between: usize,
    pub aborted: bool,
}

struct Lister<'a, 'g, F> {
    checker: &'a ConsistencyChecker<'g>,
    visit: F,
    stats: ListStats,
    since_last: usize,
}

impl<F: FnMut(&Halfspace) -> ControlFlow<()>> Lister<'_, '_, F> {
    fn check(&mut self, pos: &VertexSet, neg: &VertexSet) -> bool {
        self.stats.checks += 1;
        self.since_last += 1;
        self.checker.check_sets(pos, neg).is_some()
    }

    fn emit(&mut self, h: VertexSet) -> ControlFlow<()> {
        self.stats.emitted += 1;
        self.stats.max_checks_between = self.stats.max_checks_between.max(self.since_last);
        self.since_last = 0;
        (self.visit)(&Halfspace::new_unchecked(h))
    }

    /// `(pos, neg)` is known to be consistent. Both children are decided
    /// before descending, so backtracking never costs a check.
    fn descend(&mut self, pos: &mut VertexSet, neg: &mut VertexSet) -> ControlFlow<()> {
        let labeled = pos.union(neg);
        let Some(x) = labeled.complement().first() else {
            return self.emit(pos.clone());
        };
        let last = labeled.len() + 1 == labeled.universe();
        neg.insert(x);
        let zero_ok = if last { is_halfspace(self.checker.graph(), pos) } else { self.check(pos, neg) };
        neg.remove(x);
        pos.insert(x);
        // One of the two children of a consistent node is consistent.
        let one_ok = if !zero_ok {
            true
        } else if last {
            is_halfspace(self.checker.graph(), pos)
        } else {
            self.check(pos, neg)
        };
        pos.remove(x);

        if zero_ok {
            neg.insert(x);
            let flow = self.descend(pos, neg);
            neg.remove(x);
            flow?;
        }
        if one_ok {
            pos.insert(x);
            let flow = self.descend(pos, neg);
            pos.remove(x);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` once for every halfspace consistent with `sample`, in
/// increasing order of the label vectors (vertex `0` decided first, label `0`
/// before `1`). Stops early when `visit` breaks.
///
/// At most `2n` consistency checks happen between consecutive emissions.
pub fn list_version_space(
    g: &Graph,
    sample: &LabeledSample,
    visit: impl FnMut(&Halfspace) -> ControlFlow<()>,
) -> Result<ListStats, CheckError> {
    sample.validate(g)?;
    let checker = ConsistencyChecker::new(g);
    let (mut pos, mut neg) = sample.split(g.n());
    let mut lister = Lister { checker: &checker, visit, stats: ListStats::default(), since_last: 0 };
    if lister.check(&pos, &neg) {
        lister.stats.aborted = lister.descend(&mut pos, &mut neg).is_break();
    }
    let mut stats = lister.stats;
    stats.max_checks_between = stats.max_checks_between.max(lister.since_last);
    Ok(stats)
}

/// The version space of `sample`, sorted.
pub fn version_space(g: &Graph, sample: &LabeledSample) -> Result<Vec<Halfspace>, CheckError> {
    let mut out = Vec::new();
    list_version_space(g, sample, |h| {
        out.push(h.clone());
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

/// Counters from [`list_all_fpt_with`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FptStats {
    pub emitted: usize,
    pub orientations: usize,
    /// Orientations whose common-neighborhood complement is not bipartite.
    pub gated: usize,
    /// Side selections turned into shadow unions.
    pub candidates: usize,
    /// Candidates that passed the cut-edge test but had already been emitted.
    pub audit_duplicates: usize,
}

/// Calls `visit` once for every halfspace: `∅`, `V`, then per oriented edge
/// `(u, v)` every union of shadows `z/v` over a side selection of the
/// bipartite complement of `G[△_uv]`.
///
/// A candidate `X` is emitted only if it is a halfspace and none of its cut
/// edges was processed earlier, which assigns each halfspace to its first cut
/// edge. A hash set of emitted sets backs this up.
pub fn list_all_fpt_with(g: &Graph, mut visit: impl FnMut(&Halfspace) -> ControlFlow<()>) -> FptStats {
    let mut stats = FptStats::default();
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let shadows = ShadowTable::new(g);
    let mut processed = vec![false; 2 * g.m()];

    let mut emit = |x: VertexSet, stats: &mut FptStats| -> ControlFlow<()> {
        if !seen.insert(x.clone()) {
            stats.audit_duplicates += 1;
            return ControlFlow::Continue(());
        }
        stats.emitted += 1;
        visit(&Halfspace::new_unchecked(x))
    };

    for trivial in [g.empty_set(), g.vertices()] {
        if emit(trivial, &mut stats).is_break() {
            return stats;
        }
    }
    for (u, v) in g.oriented_edges() {
        stats.orientations += 1;
        let tri = triangle_set(g, u, v).expect("oriented edge");
        let Some(parts) = complement_induced(g, &tri).bipartition() else {
            stats.gated += 1;
            processed[g.oriented_edge_id(u, v).unwrap()] = true;
            continue;
        };
        assert!(parts.len() < 64, "more components than a selection mask can hold");
        for mask in 0u64..1 << parts.len() {
            let mut selection = g.empty_set();
            for (i, (own, other)) in parts.iter().enumerate() {
                selection.union_with(if mask >> i & 1 == 0 { own } else { other });
            }
            if selection.contains(v) {
                continue;
            }
            stats.candidates += 1;
            let x = shadows.union_towards(&selection, v).expect("selection lies in N[v]");
            if !is_halfspace(g, &x) {
                continue;
            }
            if cutset(g, &x).iter().any(|&(a, b)| processed[g.oriented_edge_id(a, b).unwrap()]) {
                continue;
            }
            if emit(x, &mut stats).is_break() {
                return stats;
            }
        }
        processed[g.oriented_edge_id(u, v).unwrap()] = true;
    }
    stats
}

/// Every halfspace, sorted.
pub fn list_all_fpt(g: &Graph) -> Vec<Halfspace> {
    let mut out = Vec::new();
    list_all_fpt_with(g, |h| {
        out.push(h.clone());
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// `4m · 2^ω / ω + 2`, an upper bound on the number of halfspaces.
pub fn count_bound(g: &Graph) -> Ratio<u128> {
    count_bound_from(g.m(), clique_number(g))
}

pub fn count_bound_from(m: usize, omega: usize) -> Ratio<u128> {
    let omega = omega.max(1) as u128;
    Ratio::new(4 * m as u128 * (1u128 << omega), omega) + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sets(hs: &[Halfspace]) -> Vec<VertexSet> {
        hs.iter().map(|h| h.positive_side().clone()).collect()
    }

    #[test]
    fn fpt_examples() {
        let k3 = fixtures::complete(3);
        assert_eq!(list_all_fpt(&k3).len(), 8);
        let p4 = fixtures::path(4);
        let mut expected: Vec<_> = [vec![], vec![0], vec![0, 1], vec![0, 1, 2], vec![3], vec![2, 3], vec![1, 2, 3], vec![0, 1, 2, 3]]
            .into_iter()
            .map(|v| p4.set_of(v))
            .collect();
        expected.sort();
        assert_eq!(sets(&list_all_fpt(&p4)), expected);
        let c5 = fixtures::cycle(5);
        assert_eq!(sets(&list_all_fpt(&c5)), vec![c5.empty_set(), c5.vertices()]);
        let stats = list_all_fpt_with(&c5, |_| ControlFlow::Continue(()));
        assert_eq!(stats.emitted, 2);
        assert_eq!(stats.orientations, 10);
    }

    #[test]
    fn version_space_examples() {
        let p4 = fixtures::path(4);
        let all = version_space(&p4, &LabeledSample::default()).unwrap();
        assert_eq!(all, list_all_fpt(&p4));
        let s = LabeledSample::new(vec![(0, true), (2, false)]);
        assert_eq!(sets(&version_space(&p4, &s).unwrap()), vec![p4.set_of([0]), p4.set_of([0, 1])]);
        let c5 = fixtures::cycle(5);
        assert_eq!(version_space(&c5, &LabeledSample::default()).unwrap().len(), 2);
        assert!(version_space(&c5, &s).unwrap().is_empty());
    }

    #[test]
    fn delay_is_bounded() {
        for (_, g) in fixtures::named() {
            let stats = list_version_space(&g, &LabeledSample::default(), |_| ControlFlow::Continue(())).unwrap();
            assert!(stats.max_checks_between <= 2 * g.n(), "{stats:?}");
        }
    }

    #[test]
    fn visitors_can_stop() {
        let k4 = fixtures::complete(4);
        let mut seen = 0;
        let stats = list_version_space(&k4, &LabeledSample::default(), |_| {
            seen += 1;
            if seen == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert!(stats.aborted);
        assert_eq!(stats.emitted, 3);
        let stats = list_all_fpt_with(&k4, |_| ControlFlow::Break(()));
        assert_eq!(stats.emitted, 1);
    }

    #[test]
    fn bounds() {
        assert_eq!(count_bound(&fixtures::complete(3)), Ratio::from_integer(34));
        assert_eq!(count_bound(&fixtures::path(4)), Ratio::from_integer(26));
        assert_eq!(count_bound(&fixtures::cycle(5)), Ratio::from_integer(42));
    }
}
