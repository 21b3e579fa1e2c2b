//! Adding two vertices of a dominating induced C4, C5 or P4 to a clique
//! immersion found in the rest of the graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::analysis::alpha_at_most_two;
use crate::error::{ensure_claim, Error, Result};
use crate::graph::Graph;
use crate::immersion::{trim_certificate, verify_certificate, ImmersionCertificate};
use crate::pattern::Pattern;

use super::{checked, half_up};

/// Bookkeeping shared by the three extensions.
///
/// `h` lists `a_1..a_4` (and `a_5` for C5) in pattern order. The removed set
/// `P` is `a_1..a_4`; `m` is the branch set of the sub-certificate and `q`
/// the remaining vertices outside `P`. `m_nbar[i]`, `q_n[i]` and `q_nbar[i]`
/// are `M ∩ N̄(a_i)`, `Q ∩ N(a_i)` and `Q ∩ N̄(a_i)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionContext {
    pub kind: Pattern,
    pub host: Graph,
    pub h: Vec<usize>,
    pub m: Vec<usize>,
    pub q: Vec<usize>,
    pub m_nbar: Vec<Vec<usize>>,
    pub q_n: Vec<Vec<usize>>,
    pub q_nbar: Vec<Vec<usize>>,
    /// Sub-certificate trimmed to `⌈(n-4)/2⌉`, in host ids.
    pub sub: ImmersionCertificate,
}

impl ExtensionContext {
    /// Checks the hypotheses and lifts `subcert`, a certificate for
    /// `host − {a_1..a_4}` in the ids given by [`Graph::delete_vertices`].
    pub fn new(
        host: &Graph,
        kind: Pattern,
        h: Vec<usize>,
        subcert: &ImmersionCertificate,
    ) -> Result<Self> {
        if !matches!(kind, Pattern::C4 | Pattern::C5 | Pattern::P4) {
            return Err(Error::precondition(format!("no extension over {kind}")));
        }
        if h.len() != kind.order() {
            return Err(Error::precondition(format!(
                "{kind} needs {} vertices, got {}",
                kind.order(),
                h.len()
            )));
        }
        for &v in &h {
            host.check_vertex(v)?;
        }
        if BTreeSet::from_iter(h.iter().copied()).len() != h.len() {
            return Err(Error::precondition("repeated vertex in H"));
        }
        let pg = kind.graph();
        for i in 0..h.len() {
            for j in i + 1..h.len() {
                if host.has_edge(h[i], h[j]) != pg.has_edge(i, j) {
                    return Err(Error::precondition(format!(
                        "H does not induce {kind} in the given order"
                    )));
                }
            }
        }
        if !alpha_at_most_two(host) {
            return Err(Error::precondition("independence number exceeds 2"));
        }
        let outside: Vec<usize> = (0..host.n()).filter(|v| !h.contains(v)).collect();
        for (a, b) in pg.edges() {
            if !host.dominates(&[h[a], h[b]], &outside) {
                return Err(Error::precondition(format!(
                    "edge {}-{} of H does not dominate the rest",
                    h[a], h[b]
                )));
            }
        }

        let n = host.n();
        let (rest, rel) = host.delete_vertices(&h[..4])?;
        verify_certificate(&rest, subcert)?;
        let want = half_up(n - 4);
        if subcert.order < want {
            return Err(Error::precondition(format!(
                "sub-certificate has order {}, need {want}",
                subcert.order
            )));
        }
        let sub = trim_certificate(subcert, want)?.relabel(host, |v| rel.old(v));
        let m = sub.branch.clone();
        let q: Vec<usize> = (0..n)
            .filter(|v| !h[..4].contains(v) && !m.contains(v))
            .collect();
        ensure_claim(q.len() == n / 2 - 2, "|Q| = floor(n/2) - 2", host, || {
            format!("|Q| = {} with n = {n}", q.len())
        })?;
        let split = |set: &[usize], i: usize, adjacent: bool| -> Vec<usize> {
            set.iter()
                .copied()
                .filter(|&v| host.has_edge(h[i], v) == adjacent)
                .collect()
        };
        let m_nbar = (0..4).map(|i| split(&m, i, false)).collect();
        let q_n = (0..4).map(|i| split(&q, i, true)).collect();
        let q_nbar = (0..4).map(|i| split(&q, i, false)).collect();
        Ok(ExtensionContext {
            kind,
            host: host.clone(),
            h,
            m,
            q,
            m_nbar,
            q_n,
            q_nbar,
            sub,
        })
    }

    fn a(&self, i: usize) -> usize {
        self.h[i]
    }

    fn adj(&self, u: usize, v: usize) -> bool {
        self.host.has_edge(u, v)
    }

    fn claim(&self, cond: bool, claim: &str, detail: impl FnOnce() -> String) -> Result<()> {
        ensure_claim(cond, claim, &self.host, detail)
    }

    /// `N̄(a_i)` as a clique certificate of order `⌈n/2⌉`.
    fn escape(&self, i: usize) -> Result<ImmersionCertificate> {
        let nbar = self.host.non_neighbors(self.a(i));
        let want = half_up(self.host.n());
        self.claim(
            nbar.len() >= want && self.host.is_clique(&nbar),
            "the non-neighbourhood of a_i is a clique on at least ceil(n/2) vertices",
            || format!("i = {}, non-neighbours {nbar:?}", i + 1),
        )?;
        checked(&self.host, ImmersionCertificate::clique(&self.host, &nbar[..want]))
    }

    /// Sub-certificate paths plus direct edges from the two new branch vertices.
    fn assemble(&self, s: usize, t: usize, mut walks: Vec<Vec<usize>>) -> Result<ImmersionCertificate> {
        walks.extend(self.sub.paths.iter().map(|p| p.walk.clone()));
        for &x in &self.m {
            for v in [s, t] {
                if self.adj(x, v) {
                    walks.push(vec![v, x]);
                }
            }
        }
        let mut branch = self.m.clone();
        branch.extend([s, t]);
        let c = ImmersionCertificate::new(&self.host, branch, walks);
        if let Err(e) = verify_certificate(&self.host, &c) {
            return Err(Error::claim(
                "the extension paths form a clique immersion",
                e.to_string(),
                &self.host,
            ));
        }
        Ok(c)
    }
}

/// Extension over a dominating induced C4 `a_1 a_2 a_3 a_4`.
pub fn extend_over_dominating_c4(ctx: &ExtensionContext) -> Result<ImmersionCertificate> {
    if ctx.kind != Pattern::C4 {
        return Err(Error::precondition("context is not for C4"));
    }
    for i in 0..4 {
        if ctx.m_nbar[i].len() > ctx.q_n[i].len() + 1 {
            return ctx.escape(i);
        }
    }
    nbar_disjoint(ctx, &ctx.h)?;
    let l = (0..4).min_by_key(|&i| ctx.m_nbar[i].len()).unwrap();
    // relabel so the minimiser is a_1 and a_4 is its neighbour a_{l-1}
    let b: Vec<usize> = (0..4).map(|j| (l + j) % 4).collect();
    let a = |j: usize| ctx.a(b[j]);
    let m1 = &ctx.m_nbar[b[0]];
    let m4 = &ctx.m_nbar[b[3]];
    ctx.claim(
        m4.len() + 3 * m1.len() <= ctx.m.len(),
        "|M∩N̄_4| <= |M| - 3|M∩N̄_1|",
        || format!("|M∩N̄_4| = {}, |M∩N̄_1| = {}, |M| = {}", m4.len(), m1.len(), ctx.m.len()),
    )?;
    let mut walks = Vec::new();
    if m4.is_empty() {
        ctx.claim(m1.is_empty(), "M∩N̄_4 empty forces M∩N̄_1 empty", || {
            format!("M∩N̄_1 = {m1:?}")
        })?;
        walks.push(vec![a(0), a(3)]);
        return ctx.assemble(a(0), a(3), walks);
    }

    let z = m4[0];
    let xs = &m4[1..];
    let nbar1: BTreeSet<usize> = ctx.q_nbar[b[0]].iter().copied().collect();
    let targets = preferred_targets(&ctx.q_n[b[3]], &nbar1, None);
    ctx.claim(targets.len() >= xs.len(), "|M∩N̄_4| <= |Q∩N_4| + 1", || {
        format!("{} sources, {} targets", xs.len() + 1, targets.len())
    })?;
    let qf: BTreeSet<usize> = targets[..xs.len()].iter().copied().collect();
    for (&x, &fx) in xs.iter().zip(&targets) {
        let mid = [1, 2]
            .into_iter()
            .find(|&i| ctx.adj(a(i), x) && ctx.adj(a(i), fx))
            .ok_or_else(|| no_middle(ctx, x, fx))?;
        walks.push(vec![x, a(mid), fx, a(3)]);
    }
    ctx.claim(ctx.adj(z, a(2)), "z is adjacent to a_3", || format!("z = {z}"))?;
    walks.push(vec![z, a(2), a(3)]);

    if !m1.is_empty() {
        let w = m1[0];
        let ys = &m1[1..];
        let free: Vec<usize> = ctx.q_n[b[0]]
            .iter()
            .copied()
            .filter(|v| !qf.contains(v))
            .collect();
        check_nested(ctx, &nbar1, &qf)?;
        let excess = qf.len().saturating_sub(nbar1.len());
        if excess > 0 {
            ctx.claim(free.len() >= 3 * m1.len(), "|Q∩N_1 \\ Q_f| >= 3|M∩N̄_1|", || {
                format!("{} free targets, |M∩N̄_1| = {}", free.len(), m1.len())
            })?;
        }
        ctx.claim(free.len() >= ys.len(), "|Q∩N_1 \\ Q_f| >= |M∩N̄_1| - 1", || {
            format!("{} free targets for {} sources", free.len(), ys.len())
        })?;
        for (&y, &gy) in ys.iter().zip(&free) {
            let mid = [1, 2]
                .into_iter()
                .find(|&i| ctx.adj(a(i), y) && ctx.adj(a(i), gy))
                .ok_or_else(|| no_middle(ctx, y, gy))?;
            walks.push(vec![y, a(mid), gy, a(0)]);
        }
        ctx.claim(ctx.adj(w, a(1)), "w is adjacent to a_2", || format!("w = {w}"))?;
        walks.push(vec![w, a(1), a(0)]);
    }
    walks.push(vec![a(0), a(3)]);
    ctx.assemble(a(0), a(3), walks)
}

/// Extension over a dominating induced C5 `a_1 .. a_5`, removing `a_1..a_4`.
pub fn extend_over_dominating_c5(ctx: &ExtensionContext) -> Result<ImmersionCertificate> {
    if ctx.kind != Pattern::C5 {
        return Err(Error::precondition("context is not for C5"));
    }
    extend_four_removed(ctx)
}

/// Extension over a dominating induced P4 `a_1 a_2 a_3 a_4`.
pub fn extend_over_dominating_p4(ctx: &ExtensionContext) -> Result<ImmersionCertificate> {
    if ctx.kind != Pattern::P4 {
        return Err(Error::precondition("context is not for P4"));
    }
    extend_four_removed(ctx)
}

fn extend_four_removed(ctx: &ExtensionContext) -> Result<ImmersionCertificate> {
    let a5 = ctx.h.get(4).copied();
    let a = |i: usize| ctx.a(i);
    let not_a5 = |v: &usize| Some(*v) != a5;

    for i in 0..4 {
        let slack = if i == 0 || i == 3 { 0 } else { 1 };
        if ctx.m_nbar[i].len() > ctx.q_n[i].len() + slack {
            return ctx.escape(i);
        }
    }
    nbar_disjoint(ctx, &ctx.h)?;
    let size_l = |i: usize| ctx.m_nbar[i].iter().filter(|v| not_a5(v)).count();
    let l = (0..3).min_by_key(|&i| size_l(i)).unwrap();
    let m4 = &ctx.m_nbar[3];
    ctx.claim(
        m4.len() + 3 * size_l(l) <= ctx.m.len(),
        "|M∩N̄_4| <= |M| - 3|M∩N̄_l \\ {a_5}|",
        || format!("|M∩N̄_4| = {}, l = {}, |M| = {}", m4.len(), l + 1, ctx.m.len()),
    )?;
    let mids: Vec<usize> = (0..3).filter(|&i| i != l).collect();
    let middle = |x: usize, y: usize| -> Result<usize> {
        mids.iter()
            .copied()
            .find(|&i| ctx.adj(a(i), x) && ctx.adj(a(i), y))
            .ok_or_else(|| no_middle(ctx, x, y))
    };

    let nbar_l: BTreeSet<usize> = ctx.q_nbar[l].iter().copied().collect();
    let targets = preferred_targets(&ctx.q_n[3], &nbar_l, a5);
    ctx.claim(targets.len() >= m4.len(), "|M∩N̄_4| <= |Q∩N_4|", || {
        format!("{} sources, {} targets", m4.len(), targets.len())
    })?;
    let qf: BTreeSet<usize> = targets[..m4.len()].iter().copied().collect();
    let mut walks = Vec::new();
    // a_5 sees neither a_2 nor a_3; with l = 1 it is reached as x a_3 a_4 and
    // a_1 takes a_1 a_5 a_4 instead of the path through P
    let mut via_a5 = false;
    for (&x, &fx) in m4.iter().zip(&targets) {
        if l == 0 && Some(fx) == a5 {
            walks.push(vec![x, a(2), a(3)]);
            via_a5 = true;
            continue;
        }
        let i = middle(x, fx)?;
        walks.push(vec![x, a(i), fx, a(3)]);
    }

    let to_a4: Vec<usize> = match a5 {
        Some(v) if via_a5 => vec![a(0), v, a(3)],
        _ => (l..4).map(a).collect(),
    };
    let ml = &ctx.m_nbar[l];
    if ml.is_empty() {
        walks.push(to_a4);
        return ctx.assemble(a(l), a(3), walks);
    }
    check_nested(ctx, &nbar_l, &qf)?;
    let free: Vec<usize> = ctx.q_n[l]
        .iter()
        .copied()
        .filter(|v| !qf.contains(v) && not_a5(v))
        .collect();
    let g_paths = |ys: &[usize], walks: &mut Vec<Vec<usize>>| -> Result<()> {
        for (&y, &gy) in ys.iter().zip(&free) {
            let i = middle(y, gy)?;
            walks.push(vec![y, a(i), gy, a(l)]);
        }
        Ok(())
    };

    if l == 0 {
        if free.len() >= ml.len() {
            g_paths(ml, &mut walks)?;
            walks.push(to_a4);
            return ctx.assemble(a(0), a(3), walks);
        }
        // only reachable with a_5 outside M and no excess in Q_f
        let a5_in_q = a5.is_some_and(|v| ctx.q.contains(&v));
        let excess = qf.len().saturating_sub(nbar_l.len());
        ctx.claim(
            a5_in_q && excess == 0,
            "|Q∩N_1 \\ (Q_f ∪ {a_5})| >= |M∩N̄_1| unless a_5 ∈ Q and Q_f ⊆ N̄_1",
            || format!("{} free targets for {} sources", free.len(), ml.len()),
        )?;
        let a5 = a5.unwrap();
        ctx.claim(free.len() + 1 >= ml.len(), "|Q∩N_1 \\ (Q_f ∪ {a_5})| >= |M∩N̄_1| - 1", || {
            format!("{} free targets for {} sources", free.len(), ml.len())
        })?;
        ctx.claim(!qf.contains(&a5), "a_5 is not in Q_f", || format!("Q_f = {qf:?}"))?;
        let z = ml[0];
        g_paths(&ml[1..], &mut walks)?;
        ctx.claim(ctx.adj(z, a(1)), "z is adjacent to a_2", || format!("z = {z}"))?;
        walks.push(vec![a(0), a(1), z]);
        walks.push(vec![a(0), a5, a(3)]);
        return ctx.assemble(a(0), a(3), walks);
    }

    let z = match a5 {
        Some(v) if ml.contains(&v) => v,
        _ => ml[0],
    };
    ctx.claim(free.len() + 1 >= ml.len(), "|Q∩N_l \\ (Q_f ∪ {a_5})| >= |M∩N̄_l| - 1", || {
        format!("l = {}, {} free targets for {} sources", l + 1, free.len(), ml.len())
    })?;
    let ys: Vec<usize> = ml.iter().copied().filter(|&v| v != z).collect();
    g_paths(&ys, &mut walks)?;
    ctx.claim(ctx.adj(z, a(0)), "z is adjacent to a_1", || format!("z = {z}"))?;
    let mut to_z: Vec<usize> = (0..=l).rev().map(a).collect();
    to_z.push(z);
    walks.push(to_z);
    walks.push(to_a4);
    ctx.assemble(a(l), a(3), walks)
}

/// Every vertex outside `H` misses at most one of `a_1..a_4`.
fn nbar_disjoint(ctx: &ExtensionContext, h: &[usize]) -> Result<()> {
    for v in ctx.m.iter().chain(&ctx.q).copied().filter(|v| !h.contains(v)) {
        let missed: Vec<usize> = (0..4).filter(|&i| !ctx.adj(ctx.a(i), v)).collect();
        ctx.claim(missed.len() <= 1, "N̄_i ∩ N̄_j avoids V − H for i != j", || {
            format!("vertex {v} misses a_i for i in {missed:?} (0-based)")
        })?;
    }
    Ok(())
}

/// `Q∩N̄ ⊆ Q_f` or `Q_f ⊆ Q∩N̄`.
fn check_nested(ctx: &ExtensionContext, nbar: &BTreeSet<usize>, qf: &BTreeSet<usize>) -> Result<()> {
    ctx.claim(
        nbar.is_subset(qf) || qf.is_subset(nbar),
        "Q∩N̄_l and Q_f are nested",
        || format!("Q∩N̄ = {nbar:?}, Q_f = {qf:?}"),
    )
}

/// Injection targets: members of `prefer` first, then the rest by id, with
/// `last` (if present) at the very end.
fn preferred_targets(pool: &[usize], prefer: &BTreeSet<usize>, last: Option<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = pool.iter().copied().filter(|v| prefer.contains(v)).collect();
    out.extend(
        pool.iter()
            .copied()
            .filter(|v| !prefer.contains(v) && Some(*v) != last),
    );
    out.extend(pool.iter().copied().filter(|v| !prefer.contains(v) && Some(*v) == last));
    out
}

fn no_middle(ctx: &ExtensionContext, x: usize, y: usize) -> Error {
    Error::claim(
        "some intermediate vertex of H is adjacent to both path ends",
        format!("no common H-neighbour for {x} and {y}"),
        &ctx.host,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_immersion, OracleBudget};

    fn with_sub(host: &Graph, kind: Pattern, h: Vec<usize>) -> ExtensionContext {
        let (rest, _) = host.delete_vertices(&h[..4]).unwrap();
        let want = half_up(rest.n());
        let (_, clique) = crate::analysis::clique_number(&rest).unwrap();
        let sub = ImmersionCertificate::clique(&rest, &clique[..want]);
        ExtensionContext::new(host, kind, h, &sub).unwrap()
    }

    #[test]
    fn c4_alone() {
        let g = Graph::cycle(4);
        let c = extend_over_dominating_c4(&with_sub(&g, Pattern::C4, vec![0, 1, 2, 3])).unwrap();
        assert_eq!(c.order, 2);
    }

    #[test]
    fn c4_join_k2() {
        let g = Graph::cycle(4).join(&Graph::complete(2)).unwrap();
        let c = extend_over_dominating_c4(&with_sub(&g, Pattern::C4, vec![0, 1, 2, 3])).unwrap();
        assert_eq!(c.order, 3);
        assert!(brute_force_immersion(&g, 3, &OracleBudget::default()).unwrap().is_some());
    }

    #[test]
    fn c5_alone_and_joined() {
        let g = Graph::cycle(5);
        let c = extend_over_dominating_c5(&with_sub(&g, Pattern::C5, vec![0, 1, 2, 3, 4])).unwrap();
        assert_eq!(c.order, 3);
        let g = Graph::cycle(5).join(&Graph::complete(1)).unwrap();
        let c = extend_over_dominating_c5(&with_sub(&g, Pattern::C5, vec![0, 1, 2, 3, 4])).unwrap();
        assert_eq!(c.order, 3);
    }

    #[test]
    fn p4_alone_and_joined() {
        let g = Graph::path(4);
        let c = extend_over_dominating_p4(&with_sub(&g, Pattern::P4, vec![0, 1, 2, 3])).unwrap();
        assert_eq!(c.order, 2);
        assert_eq!(c.path(0, 3), Some(&[0, 1, 2, 3][..]));
        let g = Graph::path(4).join(&Graph::complete(2)).unwrap();
        let c = extend_over_dominating_p4(&with_sub(&g, Pattern::P4, vec![0, 1, 2, 3])).unwrap();
        assert_eq!(c.order, 3);
    }

    #[test]
    fn hypotheses_checked() {
        let g = Graph::cycle(5);
        let (rest, _) = g.delete_vertices(&[0, 1, 2, 3]).unwrap();
        let sub = ImmersionCertificate::clique(&rest, &[0]);
        // wrong order for a C5
        assert!(ExtensionContext::new(&g, Pattern::C5, vec![0, 2, 1, 3, 4], &sub).is_err());
        assert!(ExtensionContext::new(&g, Pattern::House, vec![0, 1, 2, 3, 4], &sub).is_err());
        // C6 has an edge whose ends miss the opposite vertex
        let g = Graph::cycle(6);
        let (rest, _) = g.delete_vertices(&[0, 1, 2, 3]).unwrap();
        let sub = ImmersionCertificate::clique(&rest, &[0]);
        assert!(ExtensionContext::new(&g, Pattern::P4, vec![0, 1, 2, 3], &sub).is_err());
    }
}
