//! Equitable partitions and their quotient matrices.
//!
//! For an equitable partition the largest eigenvalue of the quotient matrix
//! equals `ρ(G)`. The characteristic polynomial is computed exactly over the
//! integers and its largest root is isolated by bisection: the quotient is
//! similar to a symmetric matrix, so the polynomial is real-rooted, its
//! largest root lies to the right of the largest critical point, and the
//! polynomial is increasing there.

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::{members, set_len, Graph, VertexSet};

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientMatrix {
    pub part_sizes: Vec<usize>,
    /// `b[i][j]`: neighbours in part `j` of any vertex in part `i`.
    pub b: Vec<Vec<i64>>,
}

impl QuotientMatrix {
    /// Builds the quotient of `g` for `parts`, checking that the parts
    /// partition `V(g)` and that the partition is equitable.
    pub fn from_partition(g: &Graph, parts: &[VertexSet]) -> Result<Self> {
        let all = parts.iter().fold(0u128, |acc, &p| {
            if acc & p != 0 {
                u128::MAX
            } else {
                acc | p
            }
        });
        if all != g.vertices() || parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "parts must be non-empty and partition the vertex set".into(),
            ));
        }
        let mut b = vec![vec![0i64; parts.len()]; parts.len()];
        for (i, &pi) in parts.iter().enumerate() {
            for (j, &pj) in parts.iter().enumerate() {
                let mut counts = members(pi).map(|v| g.degree_in(v, pj));
                let first = counts.next().expect("non-empty part");
                if counts.any(|c| c != first) {
                    return Err(Error::InvalidArgument(format!(
                        "partition is not equitable between parts {i} and {j}"
                    )));
                }
                b[i][j] = first as i64;
            }
        }
        Ok(QuotientMatrix {
            part_sizes: parts.iter().map(|&p| set_len(p)).collect(),
            b,
        })
    }

    /// Quotient of a named family under its labelled partition (hub or
    /// centre, remaining clique, independent set, pendants). Works beyond
    /// the order limit of [`Graph`].
    pub fn for_family(spec: &FamilySpec) -> Result<Self> {
        spec.validate()?;
        let sizes_and_rows: Vec<(usize, Vec<i64>)> = match *spec {
            FamilySpec::Star { n } => vec![(1, vec![0, n as i64 - 1]), (n - 1, vec![1, 0])],
            FamilySpec::Cycle { n } => vec![(n, vec![2])],
            FamilySpec::Complete { n } => vec![(n, vec![n as i64 - 1])],
            FamilySpec::CompleteBipartite { s, t } => {
                vec![(s, vec![0, t as i64]), (t, vec![s as i64, 0])]
            }
            FamilySpec::Snk { k, .. } | FamilySpec::JoinCliqueEmpty { k, .. } => {
                let q = spec.order() - k;
                vec![(k, vec![k as i64 - 1, q as i64]), (q, vec![k as i64, 0])]
            }
            FamilySpec::SnkT { n, k, t } => {
                let (k, ind, t) = (k as i64, (n - t - k) as i64, t as i64);
                vec![
                    (1, vec![0, k - 1, ind, t]),
                    ((k - 1) as usize, vec![1, k - 2, ind, 0]),
                    (ind as usize, vec![1, k - 1, 0, 0]),
                    (t as usize, vec![1, 0, 0, 0]),
                ]
            }
            FamilySpec::StarMatching { n, k } => {
                let (m, u) = (2 * k as i64, n as i64 - 1 - 2 * k as i64);
                vec![(1, vec![0, m, u]), (2 * k, vec![1, 1, 0]), (u as usize, vec![1, 0, 0])]
            }
            _ => return Err(Error::NoQuotient(spec.to_string())),
        };
        // drop empty parts (e.g. no pendants, or k = 1)
        let keep: Vec<usize> = (0..sizes_and_rows.len())
            .filter(|&i| sizes_and_rows[i].0 > 0)
            .collect();
        Ok(QuotientMatrix {
            part_sizes: keep.iter().map(|&i| sizes_and_rows[i].0).collect(),
            b: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| sizes_and_rows[i].1[j]).collect())
                .collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    pub fn size(&self) -> usize {
        let twice: i64 = self
            .part_sizes
            .iter()
            .zip(&self.b)
            .map(|(&s, row)| s as i64 * row.iter().sum::<i64>())
            .sum();
        (twice / 2) as usize
    }

    pub fn max_degree(&self) -> i64 {
        self.b.iter().map(|r| r.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficients `c[0..=k]` of `det(λI − B)`, lowest degree first.
    pub fn characteristic_polynomial(&self) -> Vec<i128> {
        characteristic_polynomial(&self.b)
    }

    /// Largest eigenvalue, bracketed below by `max(2m/n, √Δ)` and above by `Δ`.
    pub fn largest_eigenvalue(&self) -> f64 {
        let n = self.order() as f64;
        let delta = self.max_degree() as f64;
        let lower = (2.0 * self.size() as f64 / n).max(delta.sqrt());
        largest_real_root(&self.characteristic_polynomial(), lower, delta)
    }
}

/// Faddeev–LeVerrier over the integers (every division is exact).
pub fn characteristic_polynomial(b: &[Vec<i64>]) -> Vec<i128> {
    let k = b.len();
    let a: Vec<Vec<i128>> = b.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut c = vec![0i128; k + 1];
    c[k] = 1;
    let mut m = vec![vec![0i128; k]; k];
    for step in 1..=k {
        // M_step = A M_{step-1} + c_{k-step+1} I
        let mut next = vec![vec![0i128; k]; k];
        for i in 0..k {
            for j in 0..k {
                next[i][j] = (0..k).map(|l| a[i][l] * m[l][j]).sum();
            }
            next[i][i] += c[k - step + 1];
        }
        m = next;
        let trace: i128 = (0..k).map(|i| (0..k).map(|l| a[i][l] * m[l][i]).sum::<i128>()).sum();
        debug_assert_eq!(trace % step as i128, 0);
        c[k - step] = -trace / step as i128;
    }
    c
}

fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect()
}

fn largest_root_f64(p: &[f64], lower_hint: f64, upper_hint: f64) -> f64 {
    let deg = p.len() - 1;
    debug_assert!(deg >= 1);
    if deg == 1 {
        return -p[0] / p[1];
    }
    let crit = largest_root_f64(&derivative(p), f64::NEG_INFINITY, upper_hint);
    let lead = p[deg];
    let cauchy = 1.0 + p[..deg].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut lo = crit.max(lower_hint);
    let mut hi = if upper_hint.is_finite() && upper_hint >= lo && eval(p, upper_hint) >= 0.0 {
        upper_hint
    } else {
        cauchy.max(lo)
    };
    if eval(p, lo) >= 0.0 {
        // root sits at the lower end of the bracket (e.g. regular graphs)
        hi = lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval(p, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest root of a real-rooted monic polynomial (coefficients lowest
/// degree first). `lower`/`upper` are bracket hints known to enclose it.
pub fn largest_real_root(coeffs: &[i128], lower: f64, upper: f64) -> f64 {
    let p: Vec<f64> = coeffs.iter().map(|&c| c as f64).collect();
    if p.len() <= 1 {
        return 0.0;
    }
    largest_root_f64(&p, lower, upper)
}

/// Exact spectral radius of a registered family.
pub fn rho_exact_family(spec: &FamilySpec) -> Result<f64> {
    Ok(QuotientMatrix::for_family(spec)?.largest_eigenvalue())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;
    use crate::spectral::perron::perron;

    fn k2_book_closed_form(n: usize) -> f64 {
        (1.0 + ((8 * n) as f64 - 15.0).sqrt()) / 2.0
    }

    #[test]
    fn char_poly_of_book() {
        let q = QuotientMatrix::for_family(&FamilySpec::Snk { n: 13, k: 2 }).unwrap();
        assert_eq!(q.b, vec![vec![1, 11], vec![2, 0]]);
        // λ² − λ − 22
        assert_eq!(q.characteristic_polynomial(), vec![-22, -1, 1]);
        assert!((q.largest_eigenvalue() - (1.0 + 89f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn book_matches_quadratic_oracle() {
        for n in 3..600 {
            let r = rho_exact_family(&FamilySpec::Snk { n, k: 2 }).unwrap();
            assert!((r - k2_book_closed_form(n)).abs() < 1e-11, "n={n}");
        }
    }

    #[test]
    fn pendant_book_quotient_is_equitable() {
        let spec = FamilySpec::SnkT { n: 14, k: 2, t: 2 };
        let q = QuotientMatrix::for_family(&spec).unwrap();
        assert_eq!(q.part_sizes, vec![1, 1, 10, 2]);
        let g = build_family(&spec).unwrap();
        let parts = [1u128, 1 << 1, ((1u128 << 12) - 1) & !3, (1 << 12) | (1 << 13)];
        assert_eq!(QuotientMatrix::from_partition(&g, &parts).unwrap(), q);
        let p = perron(&g, 1e-12).unwrap();
        assert!((q.largest_eigenvalue() - p.rho).abs() < 1e-8);
    }

    #[test]
    fn non_equitable_partition_rejected() {
        let g = build_family(&FamilySpec::Path { n: 4 }).unwrap();
        assert!(QuotientMatrix::from_partition(&g, &[0b1111]).is_err());
        assert!(QuotientMatrix::from_partition(&g, &[0b0011, 0b0110]).is_err());
        assert!(QuotientMatrix::from_partition(&g, &[0b1001, 0b0110]).is_ok());
    }

    #[test]
    fn regular_and_edge_cases() {
        assert!((rho_exact_family(&FamilySpec::Cycle { n: 7 }).unwrap() - 2.0).abs() < 1e-12);
        assert!((rho_exact_family(&FamilySpec::Complete { n: 9 }).unwrap() - 8.0).abs() < 1e-12);
        let kb = rho_exact_family(&FamilySpec::CompleteBipartite { s: 3, t: 12 }).unwrap();
        assert!((kb - 6.0).abs() < 1e-12);
        let st = rho_exact_family(&FamilySpec::Star { n: 26 }).unwrap();
        assert!((st - 5.0).abs() < 1e-12);
        // k = 1 drops the empty "rest of clique" part
        let q = QuotientMatrix::for_family(&FamilySpec::SnkT { n: 8, k: 1, t: 3 }).unwrap();
        assert_eq!(q.part_sizes, vec![1, 4, 3]);
        assert!((q.largest_eigenvalue() - 7f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            rho_exact_family(&FamilySpec::Fan { n: 6 }),
            Err(Error::NoQuotient(_))
        ));
    }
}
