/// Row `n` of the Eulerian numbers divided by `n!`.
///
/// The recurrence runs on the normalized values
/// `b(n,k) = ((n-k) b(n-1,k-1) + (k+1) b(n-1,k)) / n`, which stay in `[0, 1]`
/// where the raw integers would overflow `u64` from `n = 21` on.
pub fn eulerian_row_normalized(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for m in 1..=n {
        let mf = m as f64;
        let mut next = vec![0.0; m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let left = if k >= 1 {
                row.get(k - 1).copied().unwrap_or(0.0)
            } else {
                0.0
            };
            let right = row.get(k).copied().unwrap_or(0.0);
            *slot = ((m - k) as f64 * left + (k + 1) as f64 * right) / mf;
        }
        row = next;
    }
    row
}

/// Binomial coefficient as a float; zero outside `0..=n`.
pub fn binomial(n: usize, k: i64) -> f64 {
    if k < 0 || k as usize > n {
        return 0.0;
    }
    let k = (k as usize).min(n - k as usize);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Integer Eulerian numbers by the unnormalized recurrence, exact in u128
    // for the sizes used here.
    fn eulerian_int(n: usize) -> Vec<u128> {
        let mut row = vec![1u128];
        for m in 1..=n {
            let next: Vec<u128> = (0..=m)
                .map(|k| {
                    let left = if k >= 1 {
                        row.get(k - 1).copied().unwrap_or(0)
                    } else {
                        0
                    };
                    let right = row.get(k).copied().unwrap_or(0);
                    (m - k) as u128 * left + (k + 1) as u128 * right
                })
                .collect();
            row = next;
        }
        row
    }

    #[test]
    fn base_row() {
        assert_eq!(eulerian_row_normalized(0), vec![1.0]);
    }

    #[test]
    fn row_three() {
        let r = eulerian_row_normalized(3);
        let expect = [1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0, 0.0];
        assert_eq!(r.len(), 4);
        for (a, b) in r.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn rows_sum_to_one_and_are_symmetric() {
        for n in 0..=25 {
            let r = eulerian_row_normalized(n);
            let s: f64 = r.iter().sum();
            assert!((s - 1.0).abs() < 1e-14, "n={n} sum={s}");
            // E(n, n) = 0 for n >= 1, symmetry is b(n,k) = b(n, n-1-k)
            if n >= 1 {
                assert_eq!(r[n], 0.0);
                for k in 0..n {
                    assert!((r[k] - r[n - 1 - k]).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn matches_integer_eulerian_numbers() {
        for n in [5usize, 11, 17, 25] {
            let exact = eulerian_int(n);
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            for (k, e) in exact.iter().enumerate() {
                let want = *e as f64 / fact;
                let got = eulerian_row_normalized(n)[k];
                assert!(
                    (got - want).abs() <= 1e-14 * want.max(1e-300) + 1e-300,
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(4, -1), 0.0);
        assert_eq!(binomial(4, 5), 0.0);
        assert_eq!(binomial(0, 0), 1.0);
    }
}
