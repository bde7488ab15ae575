//! Enumeration of index tuples used as basis labels.

/// Strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Weakly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - 1 {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[i];
                }
                break;
            }
        }
    }
}

/// Exponent vector of a sorted multiset.
pub fn exponents(multiset: &[usize], n: usize) -> Vec<usize> {
    let mut e = vec![0; n];
    for &i in multiset {
        e[i] += 1;
    }
    e
}

/// Sorted multiset from an exponent vector.
pub fn from_exponents(exps: &[usize]) -> Vec<usize> {
    exps.iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat(i).take(k))
        .collect()
}

/// Merges two strictly increasing tuples. Returns the sign of the sorting
/// permutation of the concatenation, or `None` when they share an index.
pub fn wedge_merge(a: &[usize], b: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j] < a[i] {
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((if inversions % 2 == 0 { 1 } else { -1 }, out))
}

/// Merges two sorted multisets.
pub fn multiset_merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out
}

/// All ways to split a strictly increasing tuple into a `p`-subset and its
/// complement, with the shuffle sign.
pub fn shuffles(a: &[usize], p: usize) -> Vec<(i64, Vec<usize>, Vec<usize>)> {
    let k = a.len();
    if p > k {
        return Vec::new();
    }
    subsets(k, p)
        .into_iter()
        .map(|pos| {
            let shift = pos.iter().sum::<usize>() - p * p.saturating_sub(1) / 2;
            let sign = if shift % 2 == 0 { 1 } else { -1 };
            let mut left = Vec::with_capacity(p);
            let mut right = Vec::with_capacity(k - p);
            let mut it = pos.iter().peekable();
            for (idx, &x) in a.iter().enumerate() {
                if it.peek() == Some(&&idx) {
                    left.push(x);
                    it.next();
                } else {
                    right.push(x);
                }
            }
            (sign, left, right)
        })
        .collect()
}

/// All sub-multisets of size `p` of a sorted multiset, paired with their
/// complements and the multiplicity `prod_k C(a_k, a'_k)`.
pub fn multiset_splits(m: &[usize], p: usize) -> Vec<(u64, Vec<usize>, Vec<usize>)> {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &x in m {
        match groups.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => groups.push((x, 1)),
        }
    }
    let mut out = Vec::new();
    let mut take = vec![0usize; groups.len()];
    split_rec(&groups, 0, p, &mut take, &mut out);
    out
}

fn split_rec(
    groups: &[(usize, usize)],
    g: usize,
    remaining: usize,
    take: &mut Vec<usize>,
    out: &mut Vec<(u64, Vec<usize>, Vec<usize>)>,
) {
    if g == groups.len() {
        if remaining == 0 {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut mult = 1u64;
            for ((x, c), &t) in groups.iter().zip(take.iter()) {
                left.extend(std::iter::repeat(*x).take(t));
                right.extend(std::iter::repeat(*x).take(c - t));
                mult *= crate::linalg::rational::binomial(*c as i64, t as i64);
            }
            out.push((mult, left, right));
        }
        return;
    }
    let rest: usize = groups[g + 1..].iter().map(|(_, c)| c).sum();
    let (_, c) = groups[g];
    for t in (0..=c.min(remaining)).rev() {
        if remaining - t > rest {
            break;
        }
        take[g] = t;
        split_rec(groups, g + 1, remaining - t, take, out);
    }
    take[g] = 0;
}

/// Sign of a permutation given as a sequence of distinct integers.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::binomial;

    #[test]
    fn counts() {
        for n in 0..7 {
            for k in 0..5 {
                assert_eq!(subsets(n, k).len() as u64, binomial(n as i64, k as i64));
                let expect = if n == 0 { u64::from(k == 0) } else { binomial((n + k - 1) as i64, k as i64) };
                assert_eq!(multisets(n, k).len() as u64, expect);
            }
        }
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn merge_signs() {
        assert_eq!(wedge_merge(&[1], &[0]), Some((-1, vec![0, 1])));
        assert_eq!(wedge_merge(&[0, 2], &[1]), Some((-1, vec![0, 1, 2])));
        assert_eq!(wedge_merge(&[0, 1], &[1]), None);
    }

    #[test]
    fn shuffle_signs_agree_with_permutations() {
        let a = [0, 1, 2, 3, 4];
        for p in 0..=5 {
            for (sign, l, r) in shuffles(&a, p) {
                let mut cat = l.clone();
                cat.extend(&r);
                assert_eq!(sign, permutation_sign(&cat));
            }
        }
    }

    #[test]
    fn multiset_split_multiplicities() {
        let s = multiset_splits(&[0, 0, 1], 1);
        assert_eq!(s, vec![(2, vec![0], vec![0, 1]), (1, vec![1], vec![0, 0])]);
        let total: u64 = multiset_splits(&[0, 0, 1, 2], 2).iter().map(|t| t.0).sum();
        assert_eq!(total, binomial(4, 2));
    }
}
