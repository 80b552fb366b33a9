use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "swlie", version, about = "Schouten-Weyl invariants of 3D Lorentzian Lie groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where the algebra comes from: a catalog family or a JSON file.
#[derive(Debug, Args, Clone, Default)]
pub struct Source {
    /// Catalog family: A1, A2, A3, A4 or A4-variant.
    #[arg(long)]
    pub family: Option<String>,
    /// Parameter bindings such as "l1=1,l2=-1/2"; unbound parameters stay symbolic.
    #[arg(long, requires = "family")]
    pub params: Option<String>,
    /// Custom algebra in the JSON schema.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Treat Jacobi violations in custom algebras as failures.
    #[arg(long)]
    pub strict: bool,
    /// Add wall-clock timing to the report envelope.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Which {
    Isotropic,
    AlmostHarmonic,
    HarmonicW,
    HarmonicV,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Compare {
    Paper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScanKind {
    Isotropy,
    AlmostHarmonicCurl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a JSON algebra: schema, metric, Jacobi identity, unimodularity.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Connection, Riemann, Ricci, scalar curvature, Schouten and SW tensors.
    Curvature {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Nonzero SW components, its squared norm and divergence.
    Sw {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate one isotropy or harmonicity predicate.
    Predicate {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        which: Which,
        /// Vector components "v1,v2,v3" as rationals; symbolic when omitted.
        #[arg(long)]
        vector: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a condition system and optionally compare it with the printed one.
    System {
        #[command(flatten)]
        source: Source,
        /// isotropy, almost-harmonic-curl, harmonic-contraction or harmonic-vector.
        #[arg(long)]
        predicate: String,
        #[arg(long, value_enum)]
        compare: Option<Compare>,
        #[arg(long, default_value_t = swlie_core::audit::AUDIT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Reproduce one of the printed tables.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        #[command(flatten)]
        output: Output,
    },
    /// Run every audit check.
    Audit {
        /// Run the complete audit (the only mode).
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Numeric parameter scan of a predicate over a box.
    Scan {
        #[command(flatten)]
        source: Source,
        /// Ranges such as "l1=-3:3,l2=-3:3".
        #[arg(long = "box")]
        bounds: String,
        /// Points per axis of a regular grid.
        #[arg(long, conflicts_with = "samples")]
        grid: Option<usize>,
        /// Number of uniform random points.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "isotropy")]
        predicate: ScanKind,
        #[arg(long)]
        eps_zero: Option<f64>,
        #[arg(long)]
        eps_nonzero: Option<f64>,
        /// Use the absolute isotropy test |norm2| < eps_zero.
        #[arg(long)]
        absolute: bool,
        /// Largest accepted distance from the known locus.
        #[arg(long, default_value_t = 1e-3)]
        locus_tol: f64,
        /// Emit flagged points as CSV instead of a JSON report.
        #[arg(long)]
        csv: bool,
        #[command(flatten)]
        output: Output,
    },
}
