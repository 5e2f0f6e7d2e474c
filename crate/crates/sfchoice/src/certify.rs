use std::time::Instant;

use rayon::prelude::*;
use sfchoice_core::adversary::GadgetBundle;
use sfchoice_core::oracle::{assemble_certificate, check_bundle_structure, verify_pair, GadgetCertificate};

/// Checks every pair of `bundle` on a pool of `workers` threads (`0` lets
/// the pool pick). Verdicts are collected in pair order, so the certificate
/// does not depend on the worker count apart from `runtime_ms`.
pub fn verify_gadget_parallel(bundle: &GadgetBundle, workers: usize) -> GadgetCertificate {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    let structure = check_bundle_structure(bundle);
    let verdicts = pool.install(|| (0..bundle.pairing.len()).into_par_iter().map(|i| verify_pair(bundle, i)).collect());
    let mut cert = assemble_certificate(bundle, structure, verdicts);
    cert.runtime_ms = Some(start.elapsed().as_millis() as u64);
    cert
}
