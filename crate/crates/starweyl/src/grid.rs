//! Evaluation grids in (u, v) ∈ ℂ² and a small thread helper.

use num_complex::Complex64;

/// The default 25-point (u, v) sample: both coordinates range over
/// {x + iy : x, y ∈ {-1, -1/2, 0, 1/2, 1}}, paired by a fixed stride so the
/// sample covers varied (u, v) combinations without the full 625-point product.
pub fn default_grid() -> Vec<(Complex64, Complex64)> {
    let axis = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut pts = Vec::with_capacity(25);
    for x in axis {
        for y in axis {
            pts.push(Complex64::new(x, y));
        }
    }
    (0..25).map(|j| (pts[j], pts[(7 * j + 3) % 25])).collect()
}

/// Rectangular product grid from explicit axes.
pub fn product_grid(u_axis: &[Complex64], v_axis: &[Complex64]) -> Vec<(Complex64, Complex64)> {
    let mut g = Vec::with_capacity(u_axis.len() * v_axis.len());
    for &u in u_axis {
        for &v in v_axis {
            g.push((u, v));
        }
    }
    g
}

/// Parallelism cap: STARWEYL_THREADS when set, otherwise the machine's
/// available parallelism. Results are order-fixed either way.
pub fn thread_cap() -> usize {
    let hw = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    std::env::var("STARWEYL_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .map(|cap| cap.min(hw.max(cap)))
        .unwrap_or(hw)
}

/// Map a function over items, chunked across at most `thread_cap()` threads.
/// Output order matches input order regardless of schedule.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let cap = thread_cap().min(items.len().max(1));
    if cap <= 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(cap);
    let mut out: Vec<Option<R>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    std::thread::scope(|scope| {
        let fref = &f;
        for (slot, part) in out.chunks_mut(chunk).zip(items.chunks(chunk)) {
            scope.spawn(move || {
                for (s, it) in slot.iter_mut().zip(part.iter()) {
                    *s = Some(fref(it));
                }
            });
        }
    });
    out.into_iter().map(|o| o.unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_25_points_and_origin() {
        let g = default_grid();
        assert_eq!(g.len(), 25);
        assert!(g.iter().any(|(u, _)| u.norm() == 0.0));
    }

    #[test]
    fn par_map_preserves_order() {
        let xs: Vec<i64> = (0..100).collect();
        let ys = par_map(&xs, |x| x * 2);
        assert_eq!(ys, (0..100).map(|x| x * 2).collect::<Vec<_>>());
    }
}
