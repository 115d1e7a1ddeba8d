//! Wall-clock timings and a least-squares log-log slope. The only place
//! floating point is used.

use std::time::Instant;

use permpat::{
    count_c4_undirected, count_patterns4, count_small_pattern, trivial_patterns, Generator, Pattern,
};

use crate::{BenchAlgo, CliError, Report};

/// Sizes `max_n / 10^k` down to `min_n`, ascending.
pub fn sizes(min_n: usize, max_n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut n = max_n;
    while n >= min_n.max(1) {
        out.push(n);
        n /= 10;
    }
    out.reverse();
    out
}

/// Slope of the least-squares line through `(ln n, ln t)`.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, t)| t.max(1e-9).ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Seconds for one run of `algo` on a seeded instance of size `n`, and a
/// checksum of its result.
pub fn time_once(algo: BenchAlgo, n: usize, seed: u64) -> Result<(f64, u128), CliError> {
    let mut gen = Generator::new(seed);
    let nontrivial: Vec<Pattern> = Pattern::all(4).filter(|p| !p.is_trivial()).collect();
    let all: Vec<Pattern> = Pattern::all(4).collect();
    let (elapsed, sum) = match algo {
        BenchAlgo::Codegree => {
            let g = gen.graph(n, 4 * n);
            let t = Instant::now();
            let c = count_c4_undirected(&g);
            (t.elapsed(), c)
        }
        _ => {
            let perm = gen.permutation(n);
            let t = Instant::now();
            let c: u128 = match algo {
                BenchAlgo::Nontrivial => count_patterns4(&perm, &nontrivial)?.iter().sum(),
                BenchAlgo::Trivial => count_patterns4(&perm, &trivial_patterns())?.iter().sum(),
                BenchAlgo::Full => count_patterns4(&perm, &all)?.iter().sum(),
                BenchAlgo::Small => {
                    count_small_pattern(&perm, &"312".parse().expect("valid pattern"))?
                }
                BenchAlgo::Codegree => unreachable!(),
            };
            (t.elapsed(), c)
        }
    };
    Ok((elapsed.as_secs_f64(), sum))
}

pub fn run(
    max_n: usize,
    min_n: usize,
    algo: BenchAlgo,
    seed: u64,
    r: &mut Report,
) -> Result<(), CliError> {
    let ns = sizes(min_n, max_n);
    if ns.is_empty() {
        return Err(CliError::Usage(format!(
            "no sizes between {min_n} and {max_n}"
        )));
    }
    let name = format!("{algo:?}").to_lowercase();
    r.text(format!("bench {name}, seed {seed}"));
    r.text(format!("{:>10}  {:>10}  {}", "n", "seconds", "checksum"));
    r.record("algo", &name);
    let mut points = Vec::new();
    for &n in &ns {
        let (secs, sum) = time_once(algo, n, seed)?;
        r.text(format!("{n:>10}  {secs:>10.3}  {sum}"));
        r.record(&format!("seconds.{n}"), format!("{secs:.3}"));
        points.push((n, secs));
    }
    match loglog_slope(&points) {
        Some(s) => {
            r.text(format!("log-log slope {s:.3}"));
            r.record("slope", format!("{s:.3}"));
        }
        None => r.text("log-log slope needs at least two sizes"),
    }
    Ok(())
}
