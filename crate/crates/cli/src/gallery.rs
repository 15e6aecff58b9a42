//! Fixtures bundled into the binary. Each directory under `fixtures/` is
//! self-contained and can also be loaded on its own with `--load`.

use crate::load::{parse_document, Entry};

macro_rules! fixtures {
    ($($path:literal),* $(,)?) => {
        /// `(path relative to fixtures/, contents)` for every bundled document.
        pub const FIXTURES: &[(&str, &str)] = &[
            $(($path, include_str!(concat!("../fixtures/", $path))),)*
        ];
    };
}

fixtures![
    "arrow/arrow-dense.json",
    "arrow/arrow-sets.json",
    "arrow/arrow.json",
    "chain3/chain3-three.json",
    "chain3/chain3.json",
    "discrete2/const2-everywhere.json",
    "discrete2/const2.json",
    "discrete2/discrete2-excluded-middle.json",
    "discrete2/discrete2-first-order.json",
    "discrete2/discrete2-functions.json",
    "discrete2/discrete2-one.json",
    "discrete2/discrete2.json",
    "exercises/arrow-of-span.json",
    "exercises/c2-span.json",
    "exercises/c2.json",
    "exercises/c4-tower.json",
    "exercises/c5-chain.json",
    "exercises/cospan-to-point.json",
    "exercises/cospan.json",
    "exercises/mod-pair.json",
    "exercises/parallel-pair.json",
    "exercises/point.json",
    "exercises/span-collapse.json",
    "exercises/span.json",
    "pseudocircle/P.json",
    "pseudocircle/exists-section-P.json",
    "pseudocircle/pseudocircle.json",
    "pseudocircle/sign.json",
    "pseudocircle/trivial-torsor.json",
    "pseudocircle/unit.json",
    "pseudocircle/z2.json",
    "sierpinski/sierpinski-const2.json",
    "sierpinski/sierpinski-excluded-middle.json",
    "sierpinski/sierpinski-first-order.json",
    "sierpinski/sierpinski-omega.json",
    "sierpinski/sierpinski-one.json",
    "sierpinski/sierpinski-pn.json",
    "sierpinski/sierpinski.json",
];

/// Parses every bundled fixture.
pub fn gallery() -> Vec<Entry> {
    FIXTURES
        .iter()
        .map(|(path, text)| {
            let origin = format!("gallery:{path}");
            let document = parse_document(text, &origin).expect("bundled fixtures parse");
            Entry { document, origin }
        })
        .collect()
}
