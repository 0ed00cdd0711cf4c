fn main() {
    use ndist_core::fermat::{weiszfeld, DEFAULT_MAX_ITER};
    use ndist_core::space::{self, sample_config, tags, VectorSpace};
    use std::time::Instant;

    let vs = VectorSpace::unit_box(2);
    let mut worst = 0usize;
    let mut fails = 0usize;
    let mut total_iters = 0u64;
    let start = Instant::now();
    let mut solves = 0u64;
    for n in 2..=6usize {
        for i in 0..20_000u64 {
            let mut rng = space::stream(99, tags::SAMPLE, i, n as u64);
            let cfg = sample_config(&vs, n, &mut rng);
            let mut tuples = vec![cfg.points().to_vec()];
            for spot in 0..n {
                tuples.push(cfg.replaced(spot).unwrap());
            }
            for t in tuples {
                let r = weiszfeld(&t, 1e-10, DEFAULT_MAX_ITER).unwrap();
                if !r.converged {
                    fails += 1;
                }
                worst = worst.max(r.iterations);
                total_iters += r.iterations as u64;
                solves += 1;
            }
        }
    }
    println!(
        "solves {solves}, worst iters {worst}, mean iters {:.1}, failures {fails}, elapsed {:?}",
        total_iters as f64 / solves as f64,
        start.elapsed()
    );
}
