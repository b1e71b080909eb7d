//! `simulate`: expand an experiment spec into per-cell, per-repetition
//! dataset files plus a manifest describing exactly how they were drawn.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;
use sha2::{Digest, Sha256};

use exmedian::error::{Error, Result};
use exmedian::metrics::ExperimentSpec;
use exmedian::shape::write_landmarks_csv;
use exmedian::simgen::{
    cell_rng, contaminate_angles, contaminate_shapes, generate_shape_regression,
    coherent_outlier_mean, sample_von_mises, sample_wrapped_stable, ContaminationMechanism,
    ContaminationSpec, WrappedStableSpec, GENERATOR_VERSION, RNG_NAME,
};
use exmedian::{PlanarConfiguration, Preshape};

use crate::io::{angles_to_csv, covariates_to_csv, write_atomic};

#[derive(Args)]
pub struct SimulateArgs {
    /// Experiment spec (JSON).
    #[arg(long)]
    pub spec: PathBuf,

    /// Directory the datasets and manifest are written into.
    #[arg(long, default_value = "sim-out")]
    pub out: PathBuf,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct Manifest<'a> {
    seed: u64,
    spec_sha256: String,
    generator_version: &'a str,
    rng: &'a str,
    files: Vec<String>,
}

pub fn run(args: &SimulateArgs, seed: u64) -> Result<()> {
    let raw = std::fs::read(&args.spec)?;
    let spec: ExperimentSpec = serde_json::from_slice(&raw)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", args.spec.display())))?;
    let digest = Sha256::digest(&raw);
    let mut files = Vec::new();

    match &spec {
        ExperimentSpec::CircleVonMises(s) => {
            for &n in &s.n_grid {
                for &rate in &s.rate_grid {
                    let key = format!("vm/n={n}/r={rate}");
                    let contamination = ContaminationSpec {
                        rate,
                        mechanism: ContaminationMechanism::ReplaceAngles {
                            mu_out: s.mu_out,
                            sigma: s.sigma_out,
                        },
                    };
                    for rep in 0..s.reps {
                        let mut rng = cell_rng(seed, &key, rep);
                        let clean = sample_von_mises(s.mu, s.kappa, n, &mut rng)?;
                        let dirty = contaminate_angles(&clean, &contamination, &mut rng)?;
                        files.push(write_angles(&args.out, &key, rep, &dirty)?);
                    }
                }
            }
        }
        ExperimentSpec::CircleStable(s) => {
            for &tau in &s.tau_grid {
                for &n in &s.n_grid {
                    for &alpha in &s.alpha_grid {
                        let key = format!("stable/tau={tau}/n={n}/alpha={alpha}");
                        let law =
                            WrappedStableSpec { alpha, tau, beta: s.beta, mu: s.mu };
                        for rep in 0..s.reps {
                            let mut rng = cell_rng(seed, &key, rep);
                            let angles = sample_wrapped_stable(&law, n, &mut rng)?;
                            files.push(write_angles(&args.out, &key, rep, &angles)?);
                        }
                    }
                }
            }
        }
        ExperimentSpec::ShapeLocation(s) => {
            for &rate in &s.rate_grid {
                let key = format!("shape-loc/n={}/r={rate}", s.n);
                let contamination =
                    ContaminationSpec { rate, mechanism: s.mechanism.clone() };
                for rep in 0..s.reps {
                    let mut rng = cell_rng(seed, &key, rep);
                    let sample = generate_shape_regression(&s.shape, s.n, &mut rng)?;
                    let dirty =
                        contaminate_shapes(&sample.configurations, &contamination, &mut rng)?;
                    files.push(write_shapes(&args.out, &key, rep, &dirty.preshapes)?);
                }
            }
        }
        ExperimentSpec::ShapeRegression(s) => {
            let mu = coherent_outlier_mean(&s.shape, s.outlier_strength, s.outlier_mix)?;
            for &n in &s.n_grid {
                for &rate in &s.rate_grid {
                    let key = format!("shape-reg/n={n}/r={rate}");
                    let contamination = ContaminationSpec {
                        rate,
                        mechanism: ContaminationMechanism::AddComplexNormal {
                            mu: mu.clone(),
                            scale: s.outlier_scale,
                        },
                    };
                    for rep in 0..s.reps {
                        let mut rng = cell_rng(seed, &key, rep);
                        let sample = generate_shape_regression(&s.shape, n, &mut rng)?;
                        let dirty = contaminate_shapes(
                            &sample.configurations,
                            &contamination,
                            &mut rng,
                        )?;
                        files.push(write_shapes(&args.out, &key, rep, &dirty.preshapes)?);
                        let name = format!("{}-rep{rep:02}-covariates.csv", sanitize(&key));
                        write_atomic(
                            &args.out.join(&name),
                            &covariates_to_csv(&sample.covariates)?,
                        )?;
                        files.push(name);
                    }
                }
            }
        }
        ExperimentSpec::Breakdown(s) => {
            for &level in &s.levels {
                let key = format!("breakdown/n={}/level={level}", s.n);
                let contamination = ContaminationSpec {
                    rate: level,
                    mechanism: ContaminationMechanism::ReplaceAngles {
                        mu_out: s.mu_out,
                        sigma: s.sigma_out,
                    },
                };
                for rep in 0..s.reps {
                    let mut rng = cell_rng(seed, &key, rep);
                    let clean = sample_von_mises(s.mu, s.kappa, s.n, &mut rng)?;
                    let dirty = contaminate_angles(&clean, &contamination, &mut rng)?;
                    files.push(write_angles(&args.out, &key, rep, &dirty)?);
                }
            }
        }
    }

    let manifest = Manifest {
        seed,
        spec_sha256: format!("{digest:x}"),
        generator_version: GENERATOR_VERSION,
        rng: RNG_NAME,
        files,
    };
    let body = serde_json::to_vec_pretty(&manifest).map_err(|e| Error::Io(e.to_string()))?;
    write_atomic(&args.out.join("manifest.json"), &body)?;
    eprintln!(
        "wrote {} dataset files and manifest.json to {}",
        manifest.files.len(),
        args.out.display()
    );
    Ok(())
}

/// Cell keys become file-name stems by flattening the separators.
fn sanitize(key: &str) -> String {
    key.replace('/', "_")
}

fn write_angles(out: &Path, key: &str, rep: u32, angles: &[f64]) -> Result<String> {
    let name = format!("{}-rep{rep:02}.csv", sanitize(key));
    write_atomic(&out.join(&name), &angles_to_csv(angles)?)?;
    Ok(name)
}

fn write_shapes(out: &Path, key: &str, rep: u32, shapes: &[Preshape]) -> Result<String> {
    let configs: Vec<PlanarConfiguration> = shapes
        .iter()
        .map(|u| PlanarConfiguration::new(u.coords().to_vec()))
        .collect::<Result<_>>()?;
    let mut body = Vec::new();
    write_landmarks_csv(&mut body, &configs)?;
    let name = format!("{}-rep{rep:02}-landmarks.csv", sanitize(key));
    write_atomic(&out.join(&name), &body)?;
    Ok(name)
}
