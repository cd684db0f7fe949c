//! Convert sparse tabular datasets into structured imagesets.
//!
//! Each sample's `N` features are written onto a `P × P` grid, `P` being the
//! smallest even number with `P² ≥ N`. Where a feature lands depends on two
//! choices: the feature ordering (identity, seeded random, or a greedy
//! correlation chain) and the fill order that walks the grid (boustrophedon,
//! center-out rings, or row-major).
//!
//! ```
//! use tabimage::{fit_transformer, apply_transformer, Scheme, SparseDataset};
//!
//! let data = SparseDataset::with_default_names(
//!     vec![1., 0., 1., 0., 0., 1., 0., 1., 1., 1., 0., 0.],
//!     4,
//!     vec![0, 1, 0],
//!     2,
//! )?;
//! let model = fit_transformer(&data, Scheme::SdicC, None, None)?;
//! let images = apply_transformer(&model, &data)?;
//! assert_eq!((images.count(), images.side()), (3, 2));
//! # Ok::<(), tabimage::Error>(())
//! ```

pub mod corr;
pub mod dataset;
pub mod error;
pub mod fill;
pub mod ingest;
pub mod io;
pub mod ordering;
pub mod rng;
pub mod transform;

pub use corr::{pearson_matrix, CorrMatrix};
pub use dataset::SparseDataset;
pub use error::{Error, Result};
pub use fill::{circular_fill_order, image_side, linear_fill_order, raster_fill_order, FillOrder, FillVariant};
pub use ordering::{identity_ordering, random_ordering, sdic_ordering, FeatureOrdering};
pub use transform::{apply_transformer, fit_transform, fit_transformer, ImageSet, Scheme, Transformer};
