//! Formula-to-formula constructions: lift, flatten, boxing and the
//! continuity normal form; translations along `p`-definitions; master
//! modality, ordinal sum and total-lfp formulas; symbolic ordinals.

mod constructions;
mod lift;
mod ordinal;
mod translate;

pub use constructions::{master_box, sum_formula, totalize, SumFormula};
pub use lift::{boxing, continuity_normal_form, flatten, lift, Lifted};
pub use ordinal::{ord_normalize, OrdinalAtom, OrdinalExpr};
pub use translate::{
    referee_scheme, submodel_scheme, thomason_marker, thomason_scheme, thomason_translate,
    translate, TranslationScheme, H, MONO_ACTION, V,
};
