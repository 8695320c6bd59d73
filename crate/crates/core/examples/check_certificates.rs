//! Replays the built-in exact certificates, prints one proof trace and shows
//! that a one-unit change to a coefficient is rejected.
//!
//!     cargo run --release --example check_certificates

use num_rational::BigRational;
use num_traits::One;

use gini_refine::algebra::{Monomial, RationalPolynomial};
use gini_refine::certify::{builtin_certificates, check_registered};

fn main() {
    let certs = builtin_certificates();
    let proved = certs.iter().filter(|c| check_registered(c).proved()).count();
    println!("{proved} of {} certificates proved", certs.len());

    let p04 = certs.iter().find(|c| c.statement_id == "thm21.p04").expect("built in");
    println!("{}", check_registered(p04));
    for entry in check_registered(p04).trace {
        println!("  {} {}: {}", entry.step_index, entry.op, entry.detail);
    }

    let mut tampered = p04.clone();
    let payload = tampered.final_payload_mut().expect("has a cofactor");
    let mut coeffs = payload.part(Monomial::ONE).coeffs().to_vec();
    coeffs[3] += BigRational::one();
    payload.set_part(Monomial::ONE, RationalPolynomial::new(coeffs));
    println!("after tampering: {}", check_registered(&tampered));
}
