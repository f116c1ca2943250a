//! Mixed-radix tuple enumeration. The last coordinate varies fastest.

/// Visit every tuple in `0..base` of length `arity`, in lexicographic order.
pub fn for_each_tuple(base: usize, arity: usize, mut f: impl FnMut(&[usize])) {
    if arity == 0 {
        f(&[]);
        return;
    }
    if base == 0 {
        return;
    }
    let mut t = vec![0; arity];
    loop {
        f(&t);
        let mut i = arity;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < base {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Visit every tuple over `0..total` that uses at least one index `>= old`,
/// each exactly once. Used for semi-naive closure rounds.
pub fn for_each_tuple_touching_new(old: usize, total: usize, arity: usize, mut f: impl FnMut(&[usize])) {
    try_for_each_tuple_touching_new(old, total, arity, |t| {
        f(t);
        true
    });
}

/// Like [`for_each_tuple_touching_new`], stopping as soon as `f` returns
/// false. Returns false if stopped early.
pub fn try_for_each_tuple_touching_new(
    old: usize,
    total: usize,
    arity: usize,
    mut f: impl FnMut(&[usize]) -> bool,
) -> bool {
    if arity == 0 || old >= total {
        return true;
    }
    let mut t = vec![0; arity];
    // `p` is the first position holding a new index.
    for p in 0..arity {
        let ranges: Vec<(usize, usize)> = (0..arity)
            .map(|i| match i.cmp(&p) {
                std::cmp::Ordering::Less => (0, old),
                std::cmp::Ordering::Equal => (old, total),
                std::cmp::Ordering::Greater => (0, total),
            })
            .collect();
        if ranges.iter().any(|&(lo, hi)| lo >= hi) {
            continue;
        }
        for (i, &(lo, _)) in ranges.iter().enumerate() {
            t[i] = lo;
        }
        'outer: loop {
            if !f(&t) {
                return false;
            }
            let mut i = arity;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                t[i] += 1;
                if t[i] < ranges[i].1 {
                    break;
                }
                t[i] = ranges[i].0;
            }
        }
    }
    true
}

/// Mixed-radix index of `args` in base `base`.
#[inline]
pub fn tuple_index(base: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * base + a)
}

/// Inverse of [`tuple_index`].
pub fn tuple_from_index(base: usize, arity: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for i in (0..arity).rev() {
        t[i] = index % base;
        index /= base;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumerates_in_index_order() {
        let mut seen = Vec::new();
        for_each_tuple(3, 2, |t| seen.push(tuple_index(3, t)));
        assert_eq!(seen, (0..9).collect::<Vec<_>>());
        let mut n = 0;
        for_each_tuple(5, 0, |_| n += 1);
        assert_eq!(n, 1);
        for_each_tuple(0, 2, |_| panic!("no tuples over an empty base"));
        assert_eq!(tuple_from_index(3, 3, 21), vec![2, 1, 0]);
    }

    #[test]
    fn touching_new_covers_exactly_once() {
        for (old, total, arity) in [(0, 3, 2), (2, 5, 3), (4, 5, 2), (1, 1, 2), (3, 4, 1)] {
            let mut got = Vec::new();
            for_each_tuple_touching_new(old, total, arity, |t| got.push(t.to_vec()));
            let set: HashSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len());
            let mut want = HashSet::new();
            for_each_tuple(total, arity, |t| {
                if t.iter().any(|&x| x >= old) {
                    want.insert(t.to_vec());
                }
            });
            assert_eq!(set, want);
        }
    }
}
