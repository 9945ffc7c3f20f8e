//! Blocked Gaussian elimination over `F_p` with delayed modular reduction.
//!
//! Entries are stored as reduced `u32`. Pivots are found a panel at a time;
//! the panel's row operations are then applied to each remaining row in one
//! pass with `u64` accumulation, so the trailing matrix is streamed once per
//! panel instead of once per pivot.

const PANEL: usize = 32;

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128 % p as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(p as i128) as u64
}

/// Largest panel size for which `panel * (p-1)^2 + p` fits in a `u64`.
fn panel_for(p: u64) -> usize {
    let sq = (p - 1) * (p - 1);
    if sq == 0 {
        return PANEL;
    }
    ((u64::MAX - p) / sq).clamp(1, PANEL as u64) as usize
}

#[inline]
fn axpy(acc: &mut [u64], m: u64, src: &[u32]) {
    // Bounds are guaranteed by the panel size; wrapping ops avoid overflow checks.
    for (a, &s) in acc.iter_mut().zip(src) {
        *a = a.wrapping_add(m.wrapping_mul(s as u64));
    }
}

/// Row echelon (or reduced row echelon with `full`) form in place.
/// Returns the pivot columns.
pub fn rref(p: u32, rows: usize, cols: usize, data: &mut [u32], full: bool) -> Vec<usize> {
    debug_assert_eq!(data.len(), rows * cols);
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let pivots = echelon(p as u64, rows, cols, data);
    if full {
        back_substitute(p as u64, cols, data, &pivots);
    }
    pivots
}

fn echelon(p: u64, rows: usize, cols: usize, data: &mut [u32]) -> Vec<usize> {
    let block = panel_for(p);
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut c = 0;
    let mut acc = vec![0u64; cols];
    // Multipliers of the current panel, indexed by row then panel slot.
    let mut mult = vec![0u32; rows * block];
    let mut is_piv = vec![false; rows];
    let mut panel: Vec<Vec<u32>> = Vec::with_capacity(block);
    let mut panel_rows: Vec<usize> = Vec::with_capacity(block);
    let mut panel_cols: Vec<usize> = Vec::with_capacity(block);

    while r < rows && c < cols {
        let c0 = c;
        panel.clear();
        panel_rows.clear();
        panel_cols.clear();
        for m in &mut mult[r * block..] {
            *m = 0;
        }

        while panel.len() < block && r + panel.len() < rows && c < cols {
            let t = panel.len();
            // Current value of column c in each candidate row.
            let mut chosen = None;
            for i in r..rows {
                if is_piv[i] {
                    continue;
                }
                let mut v = data[i * cols + c] as u64;
                let mi = &mult[i * block..i * block + t];
                for (s, &m) in mi.iter().enumerate() {
                    if m != 0 {
                        v += m as u64 * panel[s][c] as u64;
                    }
                }
                let v = (v % p) as u32;
                mult[i * block + t] = v;
                if v != 0 && chosen.is_none() {
                    chosen = Some(i);
                }
            }
            let Some(pi) = chosen else {
                for i in r..rows {
                    mult[i * block + t] = 0;
                }
                c += 1;
                continue;
            };
            // Materialize the pivot row.
            acc[c..].iter_mut().zip(&data[pi * cols + c..(pi + 1) * cols]).for_each(|(a, &x)| *a = x as u64);
            for s in 0..t {
                let m = mult[pi * block + s];
                if m != 0 {
                    axpy(&mut acc[c..], m as u64, &panel[s][c..]);
                }
            }
            let inv = inv_mod(acc[c] % p, p);
            let mut row = vec![0u32; cols];
            for k in c..cols {
                row[k] = ((acc[k] % p) * inv % p) as u32;
            }
            // Stored multipliers become p - value, the coefficient to add.
            for i in r..rows {
                if is_piv[i] {
                    continue;
                }
                let v = mult[i * block + t];
                mult[i * block + t] = if v == 0 { 0 } else { (p - v as u64) as u32 };
            }
            is_piv[pi] = true;
            panel.push(row);
            panel_rows.push(pi);
            panel_cols.push(c);
            c += 1;
        }

        if panel.is_empty() {
            break;
        }
        let t_len = panel.len();
        for i in r..rows {
            if is_piv[i] {
                continue;
            }
            let mi = &mult[i * block..i * block + t_len];
            if mi.iter().all(|&m| m == 0) {
                continue;
            }
            let row = &mut data[i * cols + c0..(i + 1) * cols];
            let acc = &mut acc[c0..];
            acc.iter_mut().zip(row.iter()).for_each(|(a, &x)| *a = x as u64);
            for (s, &m) in mi.iter().enumerate() {
                if m != 0 {
                    axpy(acc, m as u64, &panel[s][c0..]);
                }
            }
            row.iter_mut().zip(acc.iter()).for_each(|(x, &a)| *x = (a % p) as u32);
            for &pc in &panel_cols {
                row[pc - c0] = 0;
            }
        }
        // Move the panel's pivot rows into place.
        let mut pos: Vec<usize> = panel_rows.clone();
        for t in 0..t_len {
            let target = r + t;
            let cur = pos[t];
            if cur != target {
                for k in 0..cols {
                    data.swap(cur * cols + k, target * cols + k);
                }
                is_piv.swap(cur, target);
                for q in pos.iter_mut().skip(t + 1) {
                    if *q == target {
                        *q = cur;
                    }
                }
            }
            data[target * cols..(target + 1) * cols].copy_from_slice(&panel[t]);
        }
        for flag in &mut is_piv[r..r + t_len] {
            *flag = false;
        }
        pivots.extend_from_slice(&panel_cols);
        r += t_len;
    }
    pivots
}

fn back_substitute(p: u64, cols: usize, data: &mut [u32], pivots: &[usize]) {
    let rank = pivots.len();
    let block = panel_for(p);
    let mut acc = vec![0u64; cols];
    let mut t1 = rank;
    while t1 > 0 {
        let t0 = t1.saturating_sub(block);
        // Clear pivot columns inside the block, bottom up.
        for t in (t0 + 1..t1).rev() {
            let c = pivots[t];
            for s in t0..t {
                let f = data[s * cols + c] as u64;
                if f == 0 {
                    continue;
                }
                let m = p - f;
                let (top, bottom) = data.split_at_mut(t * cols);
                let src = &bottom[c..cols];
                let dst = &mut top[s * cols + c..(s + 1) * cols];
                for (x, &y) in dst.iter_mut().zip(src) {
                    *x = ((*x as u64 + m * y as u64) % p) as u32;
                }
            }
        }
        let c0 = pivots[t0];
        let (top, bottom) = data.split_at_mut(t0 * cols);
        let block_rows = &bottom[..(t1 - t0) * cols];
        for s in 0..t0 {
            let row = &mut top[s * cols + c0..(s + 1) * cols];
            let mut any = false;
            for t in t0..t1 {
                if row[pivots[t] - c0] != 0 {
                    any = true;
                    break;
                }
            }
            if !any {
                continue;
            }
            let acc = &mut acc[c0..];
            acc.iter_mut().zip(row.iter()).for_each(|(a, &x)| *a = x as u64);
            for t in t0..t1 {
                let f = row[pivots[t] - c0] as u64;
                if f != 0 {
                    let src = &block_rows[(t - t0) * cols + c0..(t - t0 + 1) * cols];
                    axpy(acc, p - f, src);
                }
            }
            row.iter_mut().zip(acc.iter()).for_each(|(x, &a)| *x = (a % p) as u32);
        }
        t1 = t0;
    }
}

/// Rank without modifying the input.
pub fn rank(p: u32, rows: usize, cols: usize, data: &[u32]) -> usize {
    // Eliminating along the shorter side keeps the working set small.
    if rows <= cols {
        let mut d = data.to_vec();
        echelon(p as u64, rows, cols, &mut d).len()
    } else {
        let mut t = vec![0u32; rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                t[j * rows + i] = data[i * cols + j];
            }
        }
        echelon(p as u64, cols, rows, &mut t).len()
    }
}

/// Row-major product of an `n x k` and a `k x m` matrix.
pub fn matmul(p: u32, n: usize, k: usize, m: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p64 = p as u64;
    let block = panel_for(p64);
    let mut out = vec![0u32; n * m];
    let mut acc = vec![0u64; m];
    for i in 0..n {
        acc.iter_mut().for_each(|x| *x = 0);
        let mut pending = 0;
        for t in 0..k {
            let x = a[i * k + t];
            if x == 0 {
                continue;
            }
            axpy(&mut acc, x as u64, &b[t * m..(t + 1) * m]);
            pending += 1;
            if pending == block {
                acc.iter_mut().for_each(|v| *v %= p64);
                pending = 0;
            }
        }
        for (o, v) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
            *o = (v % p64) as u32;
        }
    }
    out
}
