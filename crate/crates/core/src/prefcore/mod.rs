//! Preference data model: rankings, profiles, inversion distance, the
//! pairwise switch and Mahonian counts.

mod distance;
mod enumerate;
mod mahonian;
mod preference;
mod profile;

pub(crate) use distance::distance_unchecked;
pub use distance::{apply_switch, count_inversions, inversion_distance};
pub use enumerate::{
    enumerate_preferences, enumerate_preferences_capped, factorial, ENUMERATION_CAP,
};
pub use mahonian::{
    count_within_saturating, mahonian_table, mahonian_table_capped, MahonianTable, MAHONIAN_CAP,
};
pub use preference::{Preference, MIN_ALTERNATIVES};
pub use profile::Profile;
