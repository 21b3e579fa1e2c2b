use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::immersion::ImmersionCertificate;
use crate::inflation::{bag_invariant_check, BagMap};

use super::checked;

/// Clique immersion on `B_1 ∪ B_2k` of an inflated even path.
///
/// `p` and `q` must equal `|B_1|` and `|B_2k|`; `B_1` has to be a smallest
/// bag and `B_2k` a smallest even-position bag.
pub fn path_inflation_clique_immersion(
    g: &Graph,
    m: &BagMap,
    p: usize,
    q: usize,
) -> Result<ImmersionCertificate> {
    let len = m.bags.len();
    if len == 0 || len % 2 == 1 {
        return Err(Error::precondition(format!(
            "path inflation needs an even number of bags, got {len}"
        )));
    }
    if m.base != Graph::path(len) {
        return Err(Error::precondition("bag map base is not a path"));
    }
    bag_invariant_check(g, m).map_err(|e| Error::precondition(e.to_string()))?;
    let sizes = m.sizes();
    if sizes[0] != p || sizes[len - 1] != q {
        return Err(Error::precondition(format!(
            "p = {p}, q = {q} but the end bags have sizes {} and {}",
            sizes[0],
            sizes[len - 1]
        )));
    }
    if let Some(i) = (0..len).find(|&i| sizes[i] < p) {
        return Err(Error::precondition(format!(
            "bag {} is smaller than the first bag",
            i + 1
        )));
    }
    if let Some(i) = (1..len).step_by(2).find(|&i| sizes[i] < q) {
        return Err(Error::precondition(format!(
            "even bag {} is smaller than the last bag",
            i + 1
        )));
    }
    let (branch, walks) = alternating_paths(&m.bags);
    checked(g, ImmersionCertificate::new(g, branch, walks))
}

/// Branch set and walks of the alternating construction, with no checks.
/// Also used for the four-bag step of the cycle recursion.
pub(crate) fn alternating_paths(bags: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let first = &bags[0];
    let last = &bags[bags.len() - 1];
    let (p, q) = (first.len(), last.len());
    let mut walks = cross_paths(bags);
    for side in [first, last] {
        for (i, &a) in side.iter().enumerate() {
            for &b in &side[i + 1..] {
                walks.push(vec![a, b]);
            }
        }
    }
    let branch = first[..p].iter().chain(&last[..q]).copied().collect();
    (branch, walks)
}

/// Only the `p*q` paths `P_{r,s}` joining the two end bags.
pub(crate) fn cross_paths(bags: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let p = bags[0].len();
    let q = bags[bags.len() - 1].len();
    let mut walks = Vec::with_capacity(p * q);
    for r in 0..p {
        for s in 0..q {
            walks.push(
                bags.iter()
                    .enumerate()
                    .map(|(i, bag)| if i % 2 == 0 { bag[r] } else { bag[s] })
                    .collect(),
            );
        }
    }
    walks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inflation::{build_inflation, InflationSpec};
    use crate::oracle::{brute_force_immersion, OracleBudget};

    fn inflate(f: &[usize]) -> (Graph, BagMap) {
        build_inflation(&InflationSpec::new(Graph::path(f.len()), f.to_vec())).unwrap()
    }

    #[test]
    fn single_edge() {
        let (g, m) = inflate(&[1, 1]);
        let c = path_inflation_clique_immersion(&g, &m, 1, 1).unwrap();
        assert_eq!(c.order, 2);
        assert_eq!(c.path(0, 1), Some(&[0, 1][..]));
    }

    #[test]
    fn p4_three_five() {
        let (g, m) = inflate(&[3, 5, 3, 5]);
        let c = path_inflation_clique_immersion(&g, &m, 3, 5).unwrap();
        assert_eq!(c.order, 8);
        assert_eq!(c.branch, vec![0, 1, 2, 11, 12, 13, 14, 15]);
        let long = c.paths.iter().filter(|p| p.walk.len() == 4).count();
        assert_eq!(long, 15);
        // P_{1,5}: x_11, x_25, x_31, x_45
        assert_eq!(c.path(0, 15), Some(&[0, 7, 8, 15][..]));
    }

    #[test]
    fn two_two_two_two_matches_oracle() {
        let (g, m) = inflate(&[2, 2, 2, 2]);
        let c = path_inflation_clique_immersion(&g, &m, 2, 2).unwrap();
        assert_eq!(c.order, 4);
        assert!(brute_force_immersion(&g, 4, &OracleBudget::default()).unwrap().is_some());
    }

    #[test]
    fn hypotheses_enforced() {
        let (g, m) = inflate(&[2, 1, 2, 2]);
        assert!(path_inflation_clique_immersion(&g, &m, 2, 2).is_err());
        let (g, m) = inflate(&[1, 1, 2]);
        assert!(path_inflation_clique_immersion(&g, &m, 1, 2).is_err());
        let (g, m) = inflate(&[1, 2, 2, 3]);
        assert!(path_inflation_clique_immersion(&g, &m, 1, 3).is_err());
        let (g, m) = inflate(&[1, 3, 2, 3]);
        assert!(path_inflation_clique_immersion(&g, &m, 1, 2).is_err());
    }
}
