//! Integer-backed identifiers. Kept as distinct newtypes so an antenna id
//! can never be fed where a department id is expected.

use std::fmt;
use std::str::FromStr;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident, $inner:ty) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub $inner);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }

        impl FromStr for $name {
            type Err = <$inner as FromStr>::Err;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                s.parse::<$inner>().map($name)
            }
        }

        impl From<$inner> for $name {
            fn from(v: $inner) -> Self {
                $name(v)
            }
        }
    };
}

id_type!(
    /// Antenna (cell tower) identifier.
    AntennaId,
    u32
);
id_type!(
    /// Sub-prefecture identifier.
    SubprefId,
    u32
);
id_type!(
    /// Department identifier.
    DeptId,
    u32
);
id_type!(
    /// Region identifier.
    RegionId,
    u32
);
id_type!(
    /// Subscriber identifier.
    UserId,
    u64
);
