//! Presortedness measures over integer sequences.

/// Number of maximal non-decreasing contiguous segments. Empty input has none.
pub fn runs(xs: &[i64]) -> usize {
    if xs.is_empty() {
        return 0;
    }
    1 + xs.windows(2).filter(|w| w[1] < w[0]).count()
}

/// Pairs `i < j` with `xs[i] > xs[j]`, by merge sort in O(n log n).
pub fn inversions(xs: &[i64]) -> u64 {
    let mut buf = xs.to_vec();
    let mut scratch = vec![0; xs.len()];
    sort_count(&mut buf, &mut scratch)
}

fn sort_count(xs: &mut [i64], scratch: &mut [i64]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (lo, hi) = xs.split_at_mut(mid);
        let (s_lo, s_hi) = scratch.split_at_mut(mid);
        sort_count(lo, s_lo) + sort_count(hi, s_hi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if xs[j] < xs[i] {
            // xs[j] is below every remaining left element
            count += (mid - i) as u64;
            scratch[k] = xs[j];
            j += 1;
        } else {
            scratch[k] = xs[i];
            i += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&scratch[..n]);
    count
}

/// Result of [`local_min_depth`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMinDepth {
    /// Levels applied until a single element remains.
    pub k: usize,
    /// `m_0 = X`, then each level's local minima, ending with a singleton.
    pub chain: Vec<Vec<i64>>,
}

/// Positions of the linear local minima of `level`, where entries are
/// `(value, original position)` so equal values are ordered by position.
/// The first element needs only to beat its successor, the last only its
/// predecessor.
fn linear_local_minima(level: &[(i64, usize)]) -> Vec<(i64, usize)> {
    let n = level.len();
    (0..n)
        .filter(|&i| {
            let x = level[i];
            (i == 0 || x < level[i - 1]) && (i + 1 == n || x < level[i + 1])
        })
        .map(|i| level[i])
        .collect()
}

/// Repeatedly keeps the local minima of the sequence until one element is
/// left. A singleton input has depth 0. Empty input yields `k = 0` and an
/// empty chain.
pub fn local_min_depth(xs: &[i64]) -> LocalMinDepth {
    if xs.is_empty() {
        return LocalMinDepth {
            k: 0,
            chain: Vec::new(),
        };
    }
    let mut level: Vec<(i64, usize)> = xs.iter().copied().zip(0..).collect();
    let mut chain = vec![xs.to_vec()];
    while level.len() > 1 {
        level = linear_local_minima(&level);
        chain.push(level.iter().map(|&(v, _)| v).collect());
    }
    LocalMinDepth {
        k: chain.len() - 1,
        chain,
    }
}
