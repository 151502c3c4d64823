//! Small enumeration helpers shared across the crate.

/// Binomial coefficient with u128 intermediates; panics on overflow,
/// which does not happen at the scales this crate accepts.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Calls `f` with every size-`k` index subset of `0..n`, in
/// lexicographic order of the ascending index vector.
pub fn for_each_index_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All size-`k` subsets of `items`, each as a Vec, in lexicographic
/// index order.
pub fn subsets_of_size<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for_each_index_subset(items.len(), k, |idx| {
        out.push(idx.iter().map(|&i| items[i]).collect());
    });
    out
}
