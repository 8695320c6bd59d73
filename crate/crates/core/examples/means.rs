//! Evaluates the named means, the Gini family and the divergence kernels at
//! one pair, and prints the refinement chain in order.
//!
//!     cargo run --example means -- 1 9

use gini_refine::kernels::{
    eval_kernel, gini_mean, lehmer_mean, power_mean, DivKernel, KernelKind, NamedMean, PositivePair,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (a, b) = match args[..] {
        [a, b] => (a, b),
        _ => (1.0, 9.0),
    };
    let pair = PositivePair::new(a, b)?;

    println!("named means at ({a}, {b}), smallest first:");
    for m in NamedMean::ALL {
        println!("  {:<3} {:.12}", m.name(), eval_kernel(&m.into(), pair)?);
    }

    println!("Gini E(r, s), power B_r = E(r, 0), Lehmer K_r = E(r, r - 1):");
    for r in [-2.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
        println!(
            "  r = {r:>4}: E(r, 1) = {:.10}  B_r = {:.10}  K_r = {:.10}",
            gini_mean(r, 1.0, pair)?,
            power_mean(r, pair)?,
            lehmer_mean(r, pair)?
        );
    }

    println!("divergence kernels:");
    for d in [DivKernel::I, DivKernel::J, DivKernel::T, DivKernel::Delta, DivKernel::Hellinger] {
        let k = KernelKind::from(d);
        println!("  {:<9} {:.12}", k.to_string(), eval_kernel(&k, pair)?);
    }

    // kernel names parse the same way the command line does
    let k: KernelKind = "gini:2,1".parse()?;
    println!("{k} at (1, 2) = {}", eval_kernel(&k, PositivePair::new(1.0, 2.0)?)?);
    Ok(())
}
