mod ordered;
mod syntactic;

pub use ordered::{MonoidJson, MonoidProps, OrderedMonoid, EXHAUSTIVE_LIMIT};
pub use syntactic::{
    restricted_product, restricted_product_with_cap, syntactic_monoid, syntactic_monoid_with,
    syntactic_order, syntactic_order_with, transition_monoid, transition_monoid_with_cap,
    word_name, Stamp, SyntacticData,
};
