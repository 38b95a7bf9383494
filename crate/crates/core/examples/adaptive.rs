//! Growing the sample until successive estimates stop moving.

use graphlets::generate::erdos_renyi;
use graphlets::{adaptive_estimate, exact_counts, AdaptiveConfig, Graphlet, LossKind};

fn main() -> graphlets::Result<()> {
    let g = erdos_renyi(300, 0.08, 2);
    let truth = exact_counts(&g, 1)?;

    for (beta, loss) in [(0.05, LossKind::MaxRelative), (0.01, LossKind::Ks)] {
        let mut cfg = AdaptiveConfig::new(beta, 9);
        cfg.loss = loss;
        let (est, trace) = adaptive_estimate(&g, &cfg)?;
        println!("beta = {beta}, loss = {loss:?}, stop = {:?}", trace.stop);
        for s in &trace.steps {
            println!("  t {:>2}  K_t {:>5}  sampled {:>5}  delta {:.4}", s.t, s.k_t, s.cumulative, s.delta);
        }
        let p = Graphlet::FourPath;
        println!("  4-path {:.0} vs exact {}", est.x[p], truth.x[p]);
    }
    Ok(())
}
