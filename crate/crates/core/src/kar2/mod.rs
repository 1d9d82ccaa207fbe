//! 2-categorical idempotents of Soergel bimodules: axiom checks, split data,
//! the B_J idempotents, rainbow sandwiches, section search, relative tensor
//! products and Morita comparisons.

mod idem;
mod relative;
mod sandwich;
mod section;

pub use idem::{
    bj_two_idempotent, check_split_data, check_splitting, check_two_idem, identity_two_idem, parabolic_split_data,
    two_idem_from_split, SplitData, TwoIdem, TwoIdemReport,
};
pub use relative::{
    morita_verify, relative_tensor, sandwich_morita, self_bimodule, IdemBimodule, MoritaReport, RelativeTensor,
};
pub use sandwich::{
    circle, sandwich, sandwich_conditions, sandwich_module, sandwich_unchecked, Sandwich, SandwichConditions,
};
pub use section::{find_section, find_section_sandwich, SandwichSection, SectionSearch};

#[cfg(test)]
mod tests;
