//! Strength Pareto selection (SPEA2) over maximization objectives with
//! constrained domination.

use rand::Rng;

/// Objective vector (larger is better) plus total constraint violation.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Scored {
    pub objectives: Vec<f64>,
    pub violation: f64,
}

impl Scored {
    pub fn feasible(&self) -> bool {
        self.violation <= 0.0
    }
}

/// Feasible beats infeasible; among infeasible, smaller violation wins;
/// among feasible, Pareto dominance.
pub(crate) fn dominates(a: &Scored, b: &Scored) -> bool {
    match (a.feasible(), b.feasible()) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.violation < b.violation,
        (true, true) => {
            let mut strictly = false;
            for (x, y) in a.objectives.iter().zip(&b.objectives) {
                if x < y {
                    return false;
                }
                if x > y {
                    strictly = true;
                }
            }
            strictly
        }
    }
}

/// SPEA2 fitness (lower is better): raw fitness from dominator strengths
/// plus a k-th nearest neighbour density term below one.
pub(crate) fn fitness(pop: &[&Scored]) -> Vec<f64> {
    let n = pop.len();
    let mut dom = vec![vec![false; n]; n];
    let mut strength = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && dominates(pop[i], pop[j]) {
                dom[i][j] = true;
                strength[i] += 1;
            }
        }
    }
    let dist = distances(pop);
    let k = ((n as f64).sqrt() as usize).clamp(1, n.saturating_sub(1).max(1));
    (0..n)
        .map(|i| {
            let raw: usize = (0..n).filter(|&j| dom[j][i]).map(|j| strength[j]).sum();
            let mut d: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| dist[i][j]).collect();
            d.sort_by(f64::total_cmp);
            let sigma = d.get(k - 1).copied().unwrap_or(0.0);
            raw as f64 + 1.0 / (sigma + 2.0)
        })
        .collect()
}

/// Pairwise Euclidean distances in range-normalized objective space, with
/// violation as an extra axis.
fn distances(pop: &[&Scored]) -> Vec<Vec<f64>> {
    let n = pop.len();
    if n == 0 {
        return vec![];
    }
    let dims = pop[0].objectives.len() + 1;
    let coord = |s: &Scored, d: usize| if d < dims - 1 { s.objectives[d] } else { s.violation };
    let mut lo = vec![f64::INFINITY; dims];
    let mut hi = vec![f64::NEG_INFINITY; dims];
    for s in pop {
        for d in 0..dims {
            lo[d] = lo[d].min(coord(s, d));
            hi[d] = hi[d].max(coord(s, d));
        }
    }
    let span: Vec<f64> = (0..dims).map(|d| if hi[d] > lo[d] { hi[d] - lo[d] } else { 1.0 }).collect();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s: f64 = (0..dims).map(|d| ((coord(pop[i], d) - coord(pop[j], d)) / span[d]).powi(2)).sum();
            out[i][j] = s.sqrt();
            out[j][i] = out[i][j];
        }
    }
    out
}

/// Indices of the next archive: all nondominated members, topped up by
/// best fitness or truncated by iterated nearest-neighbour removal.
pub(crate) fn environmental_selection(pop: &[&Scored], fit: &[f64], size: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = (0..pop.len()).filter(|&i| fit[i] < 1.0).collect();
    if chosen.len() < size {
        let mut rest: Vec<usize> = (0..pop.len()).filter(|&i| fit[i] >= 1.0).collect();
        rest.sort_by(|&a, &b| fit[a].total_cmp(&fit[b]).then(a.cmp(&b)));
        chosen.extend(rest.into_iter().take(size - chosen.len()));
        chosen.sort_unstable();
        return chosen;
    }
    if chosen.len() > size {
        let sub: Vec<&Scored> = chosen.iter().map(|&i| pop[i]).collect();
        let dist = distances(&sub);
        let mut alive: Vec<bool> = vec![true; sub.len()];
        let mut sorted: Vec<Vec<f64>> = (0..sub.len())
            .map(|i| {
                let mut d: Vec<f64> = (0..sub.len()).filter(|&j| j != i).map(|j| dist[i][j]).collect();
                d.sort_by(f64::total_cmp);
                d
            })
            .collect();
        let mut remaining = sub.len();
        while remaining > size {
            // Remove the member whose sorted neighbour distances are
            // lexicographically smallest; on full ties the later index.
            let mut victim: Option<usize> = None;
            for i in 0..sub.len() {
                if !alive[i] {
                    continue;
                }
                victim = match victim {
                    None => Some(i),
                    Some(v) => {
                        let ord = sorted[i].iter().zip(&sorted[v]).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne());
                        if ord != Some(std::cmp::Ordering::Greater) {
                            Some(i)
                        } else {
                            Some(v)
                        }
                    }
                };
            }
            let v = victim.expect("nonempty archive");
            alive[v] = false;
            remaining -= 1;
            for i in 0..sub.len() {
                if alive[i] {
                    let d = dist[i][v];
                    if let Some(pos) = sorted[i].iter().position(|x| x.total_cmp(&d).is_eq()) {
                        sorted[i].remove(pos);
                    }
                }
            }
        }
        return chosen.into_iter().zip(alive).filter(|(_, a)| *a).map(|(i, _)| i).collect();
    }
    chosen
}

/// Binary tournament on fitness; ties go to the lower index.
pub(crate) fn tournament(fit: &[f64], rng: &mut impl Rng) -> usize {
    let a = rng.random_range(0..fit.len());
    let b = rng.random_range(0..fit.len());
    match fit[a].total_cmp(&fit[b]) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => a.min(b),
    }
}
