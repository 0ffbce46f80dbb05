//! Plain Nelder–Mead simplex search with the standard coefficients.

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct Outcome<const N: usize> {
    pub x: [f64; N],
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0` with an axis-aligned initial simplex of edge `step`.
///
/// Stops once `max f - min f` over the simplex falls below `tol`, or after `max_iters`.
pub fn minimize<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    x0: [f64; N],
    step: f64,
    max_iters: usize,
    tol: f64,
) -> Outcome<N> {
    let mut evaluations = 0;
    let mut eval = |x: &[f64; N]| {
        evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, eval(&x0)));
    for k in 0..N {
        let mut x = x0;
        x[k] += step;
        let v = eval(&x);
        simplex.push((x, v));
    }

    let mut iterations = 0;
    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[N].1;
        if worst - best <= tol {
            converged = true;
            break;
        }
        if iterations == max_iters {
            break;
        }
        iterations += 1;

        let mut centroid = [0.0; N];
        for (x, _) in &simplex[..N] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / N as f64;
            }
        }
        let along = |t: f64| -> [f64; N] {
            let mut out = [0.0; N];
            for k in 0..N {
                out[k] = centroid[k] + t * (simplex[N].0[k] - centroid[k]);
            }
            out
        };

        let xr = along(-REFLECT);
        let fr = eval(&xr);
        let second_worst = simplex[N - 1].1;
        if fr < best {
            let xe = along(-REFLECT * EXPAND);
            let fe = eval(&xe);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < second_worst {
            simplex[N] = (xr, fr);
            continue;
        }
        // contraction: outside if the reflection beat the worst point, inside otherwise
        let (xc, fc) = if fr < worst {
            let xc = along(-REFLECT * CONTRACT);
            let fc = eval(&xc);
            (xc, fc)
        } else {
            let xc = along(CONTRACT);
            let fc = eval(&xc);
            (xc, fc)
        };
        if fc < fr.min(worst) {
            simplex[N] = (xc, fc);
            continue;
        }
        let x_best = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            for k in 0..N {
                vertex.0[k] = x_best[k] + SHRINK * (vertex.0[k] - x_best[k]);
            }
            vertex.1 = eval(&vertex.0);
        }
    }

    Outcome {
        x: simplex[0].0,
        value: simplex[0].1,
        iterations,
        evaluations,
        converged,
    }
}
