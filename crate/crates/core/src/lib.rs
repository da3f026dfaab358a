//! Exact-arithmetic toolkit for the representation theory of finite
//! subgroups of SU(2): character tables over cyclotomic fields, McKay
//! graphs and their affine ADE classification, admissible orientations,
//! affine root lattices, the Auslander-Reiten quiver with its mesh
//! algebra, Grothendieck-group machinery, and BGP reflection functors on
//! explicit quiver representations.
//!
//! Everything is computed over exact fields (rationals, cyclotomic
//! numbers, prime fields); there is no floating point and no tolerance
//! parameter anywhere in the crate.

pub mod ar_quiver;
pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod linalg;
pub mod mckay;
pub mod orientation;
pub mod quiver_rep;
pub mod root_lattice;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Matrix over exact rationals.
pub type RatMatrix = linalg::Matrix<Rat>;
/// Matrix over a prime field (used by the character-table solver and as
/// a fast certified path inside endomorphism computations).
pub type FpMatrix = linalg::Matrix<scalar::Fp>;

/// One named verification outcome; the verification suites and the
/// acceptance tests print one line per check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: true,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: false,
            detail: detail.into(),
        }
    }
}

/// Everything derived from one group: the group itself, its character
/// table and its McKay graph.
pub struct Context {
    pub group: group::FiniteSubgroup,
    pub table: chartab::CharacterTable,
    pub graph: mckay::McKayGraph,
}

impl Context {
    /// Build the full pipeline for a group specification such as
    /// `cyclic:3`, `dihedral:2`, `tetra`, `octa` or `icosa`.
    pub fn build(spec: &str) -> Result<Self> {
        Self::build_with_max_order(spec, group::DEFAULT_MAX_ORDER)
    }

    pub fn build_with_max_order(spec: &str, max_order: usize) -> Result<Self> {
        let family = group::GroupSpec::parse(spec)?;
        let group = group::build_group(family, max_order)?;
        let table = chartab::character_table(&group)?;
        let graph = mckay::mckay_graph(&table)?;
        Ok(Context {
            group,
            table,
            graph,
        })
    }
}
