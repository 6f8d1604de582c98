use num_traits::Float;

const MAX_DEPTH: u32 = 40;

fn simpson<T: Float>(fa: T, fm: T, fb: T, h: T) -> T {
    h / T::from(6.0).unwrap() * (fa + T::from(4.0).unwrap() * fm + fb)
}

/// Composite Simpson with `panels` (even) panels of a nonnegative `g`. Used as
/// a magnitude scale so that the tolerance stays meaningful for integrals that
/// cancel to zero.
fn magnitude<T: Float, G: Fn(T) -> T>(g: &G, a: T, b: T, panels: usize) -> T {
    let h = (b - a) / T::from(panels).unwrap();
    let mut acc = g(a) + g(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc = acc + T::from(w).unwrap() * g(a + h * T::from(i).unwrap());
    }
    acc * h.abs() / T::from(3.0).unwrap()
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to a tolerance relative to
/// `∫|f|`. The tolerance is floored at a few ulps of `T`.
pub fn adaptive_simpson<T, F>(f: F, a: T, b: T, rel_tol: T) -> T
where
    T: Float,
    F: Fn(T) -> T,
{
    adaptive_simpson_scaled(&f, |x| f(x).abs(), a, b, rel_tol)
}

/// As [`adaptive_simpson`], but the tolerance is relative to `∫ g` for a
/// nonnegative `g ≥ |f|`. When `f` is a sum of terms that cancel, passing the
/// sum of their magnitudes keeps the tolerance above the rounding noise.
pub fn adaptive_simpson_scaled<T, F, G>(f: F, g: G, a: T, b: T, rel_tol: T) -> T
where
    T: Float,
    F: Fn(T) -> T,
    G: Fn(T) -> T,
{
    if a == b {
        return T::zero();
    }
    let scale = magnitude(&g, a, b, 16);
    if scale == T::zero() || !scale.is_finite() {
        return if scale.is_finite() { T::zero() } else { scale };
    }
    let rel = rel_tol.max(T::epsilon() * T::from(64.0).unwrap());
    let two = T::from(2.0).unwrap();
    let (fa, fb, fm) = (f(a), f(b), f((a + b) / two));
    let whole = simpson(fa, fm, fb, b - a);
    refine(&f, a, b, fa, fm, fb, whole, rel * scale, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Float, F: Fn(T) -> T>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T {
    let two = T::from(2.0).unwrap();
    let m = (a + b) / two;
    let (lm, rm) = ((a + m) / two, (m + b) / two);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    // the last clause stops refinement once the difference is rounding noise
    if depth == 0
        || delta.abs() <= T::from(15.0).unwrap() * tol
        || delta.abs() <= T::epsilon() * T::from(64.0).unwrap() * (left.abs() + right.abs())
    {
        return left + right + delta / T::from(15.0).unwrap();
    }
    refine(f, a, m, fa, flm, fm, left, tol / two, depth - 1) + refine(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
}
