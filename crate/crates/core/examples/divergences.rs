//! Divergences between two probability distributions, and the identity
//! J = 4(I + T) checked on random pairs.
//!
//!     cargo run --example divergences

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gini_refine::distributions::{check_identity_17, divergence, validate, Distribution};
use gini_refine::kernels::{DivKernel, KernelKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = validate(&[0.1, 0.2, 0.3, 0.4])?;
    let q = validate(&[0.25, 0.25, 0.25, 0.25])?;
    for d in [DivKernel::I, DivKernel::J, DivKernel::T, DivKernel::Delta, DivKernel::Hellinger] {
        let k = KernelKind::from(d);
        println!("{:<9} {:.12}", k.to_string(), divergence(&k, &p, &q)?);
    }

    // inputs are validated: entries positive, sum 1
    if let Err(e) = validate(&[0.5, 0.6]) {
        println!("rejected: {e}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let worst = (0..1000)
        .map(|i| {
            let n = 2 + i % 9;
            let (p, q) = (Distribution::random(&mut rng, n), Distribution::random(&mut rng, n));
            check_identity_17(&p, &q).map(f64::abs)
        })
        .try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))?;
    println!("max |J - 4(I + T)| over 1000 random pairs: {worst:e}");
    Ok(())
}
