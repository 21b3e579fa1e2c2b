//! Seeded benchmark suites. Instance `i` of a run with seed `s` is built
//! from seed `s + i`, so any single instance can be replayed.

use std::str::FromStr;
use std::time::Instant;

use immlab::analysis::{
    chromatic_number, colors_used, is_free, is_proper_coloring, weighted_chromatic_number,
};
use immlab::construct::*;
use immlab::gen::*;
use immlab::oracle::{max_immersion_order, OracleBudget};
use immlab::{verify_certificate, ClaimViolation, Error, Graph, ImmersionCertificate, Pattern};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{dispatch_name, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    PathInflation,
    CycleInflation,
    Hajos,
    Forbholes,
    Dominating(Pattern),
    House,
    Owh,
    Vergara,
    OracleAgree,
    K4Minus,
}

impl Suite {
    pub const NAMES: [&'static str; 12] = [
        "path-inflation",
        "cycle-inflation",
        "hajos",
        "forbholes",
        "dominating-c4",
        "dominating-c5",
        "dominating-p4",
        "house",
        "owh",
        "vergara",
        "oracle-agree",
        "k4minus",
    ];

    pub fn name(self) -> String {
        match self {
            Suite::PathInflation => "path-inflation".into(),
            Suite::CycleInflation => "cycle-inflation".into(),
            Suite::Hajos => "hajos".into(),
            Suite::Forbholes => "forbholes".into(),
            Suite::Dominating(p) => format!("dominating-{}", p.name().to_ascii_lowercase()),
            Suite::House => "house".into(),
            Suite::Owh => "owh".into(),
            Suite::Vergara => "vergara".into(),
            Suite::OracleAgree => "oracle-agree".into(),
            Suite::K4Minus => "k4minus".into(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "path-inflation" => Suite::PathInflation,
            "cycle-inflation" => Suite::CycleInflation,
            "hajos" => Suite::Hajos,
            "forbholes" => Suite::Forbholes,
            "dominating-c4" => Suite::Dominating(Pattern::C4),
            "dominating-c5" => Suite::Dominating(Pattern::C5),
            "dominating-p4" => Suite::Dominating(Pattern::P4),
            "house" => Suite::House,
            "owh" => Suite::Owh,
            "vergara" => Suite::Vergara,
            "oracle-agree" => Suite::OracleAgree,
            "k4minus" => Suite::K4Minus,
            _ => {
                return Err(Error::Parse(format!(
                    "unknown suite {s:?}, expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationEntry {
    pub instance: String,
    #[serde(flatten)]
    pub violation: ClaimViolation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub violations: Vec<ViolationEntry>,
    pub reports: Vec<SolveReport>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.violations.is_empty()
    }
}

/// Runs `count` instances on `jobs` threads. Reports come back in instance order.
pub fn run_suite(suite: Suite, count: usize, seed: u64, jobs: usize) -> Result<Summary, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::precondition(e.to_string()))?;
    let results: Vec<(SolveReport, Option<ClaimViolation>)> = pool.install(|| {
        (0..count)
            .into_par_iter()
            .map(|i| run_instance(suite, i, seed.wrapping_add(i as u64)))
            .collect()
    });
    let mut summary = Summary {
        suite: suite.name(),
        passed: 0,
        failed: 0,
        violations: Vec::new(),
        reports: Vec::with_capacity(count),
    };
    for (report, violation) in results {
        if report.passed() {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        if let Some(v) = violation {
            summary.violations.push(ViolationEntry {
                instance: report.instance.clone(),
                violation: v,
            });
        }
        summary.reports.push(report);
    }
    Ok(summary)
}

/// Solves instance `i` of a suite and checks the suite's expectations.
pub fn run_instance(suite: Suite, i: usize, seed: u64) -> (SolveReport, Option<ClaimViolation>) {
    let id = format!("{}/{i}", suite.name());
    let start = Instant::now();
    let res = match suite {
        Suite::PathInflation => path_inflation(seed),
        Suite::CycleInflation => cycle_inflation(seed),
        Suite::Hajos => hajos(),
        Suite::Forbholes => forbholes(seed),
        Suite::Dominating(p) => dominating(p, seed),
        Suite::House => recursion(Pattern::House, seed),
        Suite::Owh => recursion(Pattern::Owh, seed),
        Suite::Vergara => vergara(Pattern::SEVEN[i % 7], seed),
        Suite::OracleAgree => oracle_agree(seed),
        Suite::K4Minus => k4minus(i, seed),
    };
    let wall = start.elapsed();
    match res {
        Ok(o) => {
            let mut r = SolveReport::new(id, &o.graph, o.method, wall).with_certificate(&o.graph, &o.cert);
            r.chi = o.chi;
            r.failures.extend(o.failures);
            (r, None)
        }
        Err((g, method, e)) => {
            let violation = match &e {
                Error::ClaimViolation(v) => Some((**v).clone()),
                _ => None,
            };
            (SolveReport::new(id, &g, method, wall).with_error(&e), violation)
        }
    }
}

struct Outcome {
    graph: Graph,
    method: String,
    cert: ImmersionCertificate,
    chi: Option<usize>,
    failures: Vec<String>,
}

impl Outcome {
    fn new(graph: Graph, method: impl Into<String>, cert: ImmersionCertificate) -> Self {
        Outcome {
            graph,
            method: method.into(),
            cert,
            chi: None,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn expect_half(&mut self) {
        let (n, order) = (self.graph.n(), self.cert.order);
        self.expect(order == half_up(n), || format!("order {order}, expected {}", half_up(n)));
    }
}

type Failed = (Graph, String, Error);
type Res = Result<Outcome, Failed>;

fn fail<'a>(g: &'a Graph, method: &str) -> impl FnOnce(Error) -> Failed + 'a {
    let method = method.to_string();
    move |e| (g.clone(), method, e)
}

fn empty() -> Graph {
    Graph::empty(0).unwrap()
}

fn path_inflation(seed: u64) -> Res {
    let k = 2 * (1 + (seed % 5) as usize);
    let (g, m) = random_inflation(InflationKind::Path, k, 5, seed).map_err(fail(&empty(), "path"))?;
    let (p, q) = (m.bags[0].len(), m.bags[k - 1].len());
    let cert = path_inflation_clique_immersion(&g, &m, p, q).map_err(fail(&g, "path"))?;
    let mut want: Vec<usize> = m.bags[0].iter().chain(&m.bags[k - 1]).copied().collect();
    want.sort_unstable();
    let mut o = Outcome::new(g, "path", cert);
    let order = o.cert.order;
    o.expect(order == p + q, || format!("order {order}, expected p+q = {}", p + q));
    o.expect(o.cert.branch == want, || "branch set is not B_1 ∪ B_2k".into());
    Ok(o)
}

fn cycle_inflation(seed: u64) -> Res {
    let k = 3 + (seed % 7) as usize;
    let (g, m) = random_inflation(InflationKind::Cycle, k, 4, seed).map_err(fail(&empty(), "cycle"))?;
    let (cert, col) = cycle_inflation_clique_immersion(&g, &m).map_err(fail(&g, "cycle"))?;
    let chi = weighted_chromatic_number(&m.base, &m.sizes()).map_err(fail(&g, "cycle"))?;
    let proper = is_proper_coloring(&g, &col);
    let used = colors_used(&col);
    let mut o = Outcome::new(g, "cycle", cert);
    o.chi = Some(chi);
    let order = o.cert.order;
    o.expect(proper, || "colouring is not proper".into());
    o.expect(order == used, || format!("order {order} but {used} colours"));
    o.expect(order >= chi, || format!("order {order} below chi {chi}"));
    Ok(o)
}

fn hajos() -> Res {
    let inst = forbholes_with(2, vec![2; 5], 0).map_err(fail(&empty(), "forbholes"))?;
    let g = inst.graph;
    let cert = hole_free_immersion(&g).map_err(fail(&g, "forbholes"))?;
    let (chi, _) = chromatic_number(&g).map_err(fail(&g, "forbholes"))?;
    let mut o = Outcome::new(g, "forbholes", cert);
    o.chi = Some(chi);
    let order = o.cert.order;
    o.expect(chi == 5, || format!("chi {chi}, expected 5"));
    o.expect(order == 5, || format!("order {order}, expected 5"));
    Ok(o)
}

fn forbholes(seed: u64) -> Res {
    let alpha = 2 + (seed % 2) as usize;
    let inst = forbholes_family(alpha, seed).map_err(fail(&empty(), "forbholes"))?;
    let g = inst.graph;
    let cert = hole_free_immersion(&g).map_err(fail(&g, "forbholes"))?;
    let chi_a = weighted_chromatic_number(&inst.bags.base, &inst.bags.sizes()).map_err(fail(&g, "forbholes"))?;
    let want = chi_a + inst.universal.len();
    let exact = if g.n() <= 18 {
        Some(chromatic_number(&g).map_err(fail(&g, "forbholes"))?.0)
    } else {
        None
    };
    let mut o = Outcome::new(g, "forbholes", cert);
    o.chi = exact;
    let order = o.cert.order;
    o.expect(order == want, || format!("order {order}, expected chi(G[A]) + |B| = {want}"));
    if let Some(chi) = exact {
        o.expect(order == chi, || format!("order {order}, exact chi {chi}"));
    }
    Ok(o)
}

/// Sub-certificates on `G - H` come from the auto solver; instances it
/// cannot handle are resampled with a shifted seed.
fn dominating(kind: Pattern, seed: u64) -> Res {
    let method = format!("extend-{}", kind.name().to_ascii_lowercase());
    let span = 21 - kind.order();
    let mut last = None;
    for attempt in 0..50u64 {
        let s = seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9));
        let n = kind.order() + (s % span as u64) as usize;
        let inst = dominating_family(kind, n, s).map_err(fail(&empty(), &method))?;
        let g = inst.graph;
        let (rest, _) = g.delete_vertices(&inst.h[..4]).map_err(fail(&g, &method))?;
        let sub = match solve_auto(&rest) {
            Ok((_, c)) => c,
            Err(e @ Error::ClaimViolation(_)) => return Err((g, method, e)),
            Err(e) => {
                last = Some((g, e));
                continue;
            }
        };
        let ctx = ExtensionContext::new(&g, kind, inst.h.clone(), &sub).map_err(fail(&g, &method))?;
        let cert = match kind {
            Pattern::C4 => extend_over_dominating_c4(&ctx),
            Pattern::C5 => extend_over_dominating_c5(&ctx),
            _ => extend_over_dominating_p4(&ctx),
        }
        .map_err(fail(&g, &method))?;
        let mut o = Outcome::new(g, method, cert);
        o.expect_half();
        return Ok(o);
    }
    let (g, e) = last.expect("at least one attempt");
    Err((g, method, e))
}

fn recursion(h: Pattern, seed: u64) -> Res {
    let method = h.name();
    let n = 1 + (seed % 24) as usize;
    let g = random_hfree_alpha2(h, n, seed, 1000).map_err(fail(&empty(), method))?;
    let cert = match h {
        Pattern::House => house_free_immersion(&g),
        _ => owh_free_immersion(&g),
    }
    .map_err(fail(&g, method))?;
    let mut o = Outcome::new(g, method, cert);
    o.expect_half();
    Ok(o)
}

fn vergara(h: Pattern, seed: u64) -> Res {
    let method = format!("vergara:{h}->{}", dispatch_name(h));
    let n = if h == Pattern::K4 {
        1 + (seed % 8) as usize
    } else {
        1 + (seed % 20) as usize
    };
    let g = random_hfree_alpha2(h, n, seed, 1000).map_err(fail(&empty(), &method))?;
    let cert = vergara_solve(&g, h).map_err(fail(&g, &method))?;
    let mut o = Outcome::new(g, method, cert);
    o.expect_half();
    Ok(o)
}

/// Orders of every construction whose hypotheses `g` meets.
fn constructor_orders(g: &Graph) -> Result<Vec<(String, usize)>, Error> {
    let mut out = Vec::new();
    for h in Pattern::SEVEN {
        if is_free(g, h)? {
            let c = vergara_solve(g, h)?;
            verify_certificate(g, &c)?;
            out.push((format!("vergara:{h}"), c.order));
        }
    }
    if is_free(g, Pattern::House)? {
        out.push(("house".into(), house_free_immersion(g)?.order));
    }
    if is_free(g, Pattern::Owh)? {
        out.push(("owh".into(), owh_free_immersion(g)?.order));
    }
    if is_free(g, Pattern::C4)? {
        out.push(("forbholes".into(), hole_free_immersion(g)?.order));
    }
    Ok(out)
}

fn oracle_agree(seed: u64) -> Res {
    let n = 1 + (seed % 9) as usize;
    let g = random_alpha2(n, seed).map_err(fail(&empty(), "oracle"))?;
    let budget = OracleBudget {
        max_n: 9,
        max_t: n,
        ..OracleBudget::default()
    };
    let (t, cert) = max_immersion_order(&g, &budget).map_err(fail(&g, "oracle"))?;
    let orders = constructor_orders(&g).map_err(fail(&g, "oracle"))?;
    let mut o = Outcome::new(g, "oracle", cert);
    o.expect(t >= half_up(n), || format!("oracle order {t} below {}", half_up(n)));
    for (name, order) in orders {
        o.expect(t >= order, || format!("{name} built order {order} above oracle {t}"));
    }
    Ok(o)
}

/// Instance 0 is `C5` itself; the rest are random.
fn k4minus(i: usize, seed: u64) -> Res {
    let g = if i == 0 {
        Graph::cycle(5)
    } else {
        let n = 1 + (seed % 20) as usize;
        random_hfree_alpha2(Pattern::K4Minus, n, seed, 1000).map_err(fail(&empty(), "k4minus"))?
    };
    let out = k4minus_free_clique(&g).map_err(fail(&g, "k4minus"))?;
    let mut o = Outcome::new(g, "k4minus", out.certificate);
    let n = o.graph.n();
    match out.partition {
        Some(p) => {
            let valid = p.is_valid(&o.graph);
            let big = p.larger().len();
            o.expect(valid, || "partition is not two cliques covering V".into());
            o.expect(big >= half_up(n), || format!("larger side {big} below {}", half_up(n)));
            o.expect(i != 0, || "C5 returned a partition".into());
        }
        None => {
            let order = o.cert.order;
            o.expect(i == 0 && order == 3, || format!("no partition, order {order}"));
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("path-inflation-2".parse::<Suite>().is_err());
    }

    #[test]
    fn empty_run() {
        let s = run_suite(Suite::PathInflation, 0, 0, 1).unwrap();
        assert_eq!((s.passed, s.failed), (0, 0));
        assert!(s.all_passed());
    }

    #[test]
    fn jobs_do_not_change_reports() {
        let one = run_suite(Suite::Vergara, 14, 3, 1).unwrap();
        let four = run_suite(Suite::Vergara, 14, 3, 4).unwrap();
        let strip = |s: &Summary| -> Vec<(String, Option<usize>, bool)> {
            s.reports.iter().map(|r| (r.graph_sha256.clone(), r.order, r.verified)).collect()
        };
        assert_eq!(strip(&one), strip(&four));
        assert!(one.all_passed());
    }
}
