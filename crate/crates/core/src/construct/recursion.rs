use crate::analysis::{alpha_at_most_two, clique_number, find_induced};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::immersion::{trim_certificate, ImmersionCertificate};
use crate::pattern::Pattern;

use super::{
    checked, extend_over_dominating_c4, extend_over_dominating_c5, extend_over_dominating_p4,
    half_up, hole_free_immersion, ExtensionContext,
};

/// Order-`⌈n/2⌉` clique immersion in a house-free graph with `α ≤ 2`.
pub fn house_free_immersion(g: &Graph) -> Result<ImmersionCertificate> {
    require_alpha_two(g)?;
    require_free(g, Pattern::House)?;
    checked(g, house_free(g)?)
}

/// Order-`⌈n/2⌉` clique immersion in a one-wall-house-free graph with `α ≤ 2`.
pub fn owh_free_immersion(g: &Graph) -> Result<ImmersionCertificate> {
    require_alpha_two(g)?;
    require_free(g, Pattern::Owh)?;
    checked(g, owh_free(g)?)
}

pub(super) fn require_alpha_two(g: &Graph) -> Result<()> {
    if alpha_at_most_two(g) {
        Ok(())
    } else {
        Err(Error::precondition("independence number exceeds 2"))
    }
}

pub(super) fn require_free(g: &Graph, p: Pattern) -> Result<()> {
    match find_induced(g, p)? {
        None => Ok(()),
        Some(copy) => Err(Error::precondition(format!(
            "graph contains an induced {p} on {copy:?}"
        ))),
    }
}

/// A maximum clique cut down to `⌈n/2⌉`; enough whenever `n <= 4`.
pub(super) fn small_clique(g: &Graph) -> Result<ImmersionCertificate> {
    let (w, clique) = clique_number(g)?;
    let want = half_up(g.n());
    if w < want {
        return Err(Error::claim(
            "a graph on at most 4 vertices with α <= 2 has a clique on ceil(n/2) vertices",
            format!("ω = {w}"),
            g,
        ));
    }
    Ok(ImmersionCertificate::clique(g, &clique[..want]))
}

fn trimmed_half(g: &Graph, c: ImmersionCertificate, source: &str) -> Result<ImmersionCertificate> {
    let want = half_up(g.n());
    if c.order < want {
        return Err(Error::claim(
            "χ >= ceil(n/2) when α <= 2",
            format!("{source} returned order {} < {want}", c.order),
            g,
        ));
    }
    trim_certificate(&c, want)
}

fn house_free(g: &Graph) -> Result<ImmersionCertificate> {
    if g.n() <= 4 {
        return small_clique(g);
    }
    let Some(f) = find_induced(g, Pattern::C4)? else {
        return trimmed_half(g, hole_free_immersion(g)?, "hole-free construction");
    };
    for v in (0..g.n()).filter(|v| !f.contains(v)) {
        let sees = |i: usize| g.has_edge(v, f[i % 4]);
        if !(0..4).any(|i| sees(i) && sees(i + 1) && sees(i + 2)) {
            return Err(Error::claim(
                "in a house-free graph every vertex outside an induced C4 sees three consecutive C4 vertices",
                format!("vertex {v} against C4 {f:?}"),
                g,
            ));
        }
    }
    let (rest, _) = g.delete_vertices(&f)?;
    let sub = house_free(&rest)?;
    let ctx = ExtensionContext::new(g, Pattern::C4, f, &sub)?;
    extend_over_dominating_c4(&ctx)
}

fn owh_free(g: &Graph) -> Result<ImmersionCertificate> {
    if g.n() <= 4 {
        return small_clique(g);
    }
    let Some(p) = find_induced(g, Pattern::P4)? else {
        // an induced house contains an induced P4
        return house_free(g);
    };
    let outside: Vec<usize> = (0..g.n()).filter(|v| !p.contains(v)).collect();
    let undominated = outside
        .iter()
        .copied()
        .find(|&v| (0..3).any(|i| !g.has_edge(v, p[i]) && !g.has_edge(v, p[i + 1])));
    let Some(v) = undominated else {
        let (rest, _) = g.delete_vertices(&p)?;
        let sub = owh_free(&rest)?;
        let ctx = ExtensionContext::new(g, Pattern::P4, p, &sub)?;
        return extend_over_dominating_p4(&ctx);
    };
    let seen: Vec<usize> = (0..4).filter(|&i| g.has_edge(v, p[i])).collect();
    if seen != [0, 3] {
        return Err(Error::claim(
            "a vertex not dominated by a P4 edge closes a C5 with it",
            format!("vertex {v} sees positions {seen:?} of P4 {p:?}, giving a one-wall house"),
            g,
        ));
    }
    let h = vec![p[0], p[1], p[2], p[3], v];
    let outside: Vec<usize> = (0..g.n()).filter(|x| !h.contains(x)).collect();
    for u in outside {
        if (0..5).any(|i| !g.has_edge(u, h[i]) && !g.has_edge(u, h[(i + 1) % 5])) {
            return Err(Error::claim(
                "every edge of the located C5 dominates the rest",
                format!("vertex {u} is missed by an edge of C5 {h:?}, giving a one-wall house"),
                g,
            ));
        }
    }
    let (rest, _) = g.delete_vertices(&h[..4])?;
    let sub = owh_free(&rest)?;
    let ctx = ExtensionContext::new(g, Pattern::C5, h, &sub)?;
    extend_over_dominating_c5(&ctx)
}
