use super::matrix::IntMatrix;

/// `A <= B` by corner sums; matrices with different margins are incomparable.
pub fn order_leq(a: &IntMatrix, b: &IntMatrix) -> bool {
    let n = a.n();
    if n != b.n() || a.row_sums() != b.row_sums() || a.col_sums() != b.col_sums() {
        return false;
    }
    let corner = |m: &IntMatrix, rows: core::ops::RangeInclusive<usize>, cols: core::ops::RangeInclusive<usize>| -> u64 {
        let mut s = 0u64;
        for r in rows {
            for c in cols.clone() {
                s += m.get(r, c) as u64;
            }
        }
        s
    };
    for i in 0..n {
        for j in 0..n {
            if i < j {
                if corner(a, 0..=i, j..=n - 1) > corner(b, 0..=i, j..=n - 1) {
                    return false;
                }
            } else if j < i && corner(a, i..=n - 1, 0..=j) > corner(b, i..=n - 1, 0..=j) {
                return false;
            }
        }
    }
    true
}
