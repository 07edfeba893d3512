use super::Mode;

/// Longest increasing subsequence length by patience sorting, `O(n log n)`.
pub fn lis_length(s: &[i64], mode: Mode) -> usize {
    // tails[l] = smallest possible last element of a monotone run of length l+1
    let mut tails: Vec<i64> = Vec::with_capacity(s.len().min(1024));
    for &x in s {
        let pos = match mode {
            Mode::Strict => tails.partition_point(|&t| t < x),
            Mode::Weak => tails.partition_point(|&t| t <= x),
        };
        if pos == tails.len() {
            tails.push(x);
        } else {
            tails[pos] = x;
        }
    }
    tails.len()
}
