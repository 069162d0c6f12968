//! Racks, cocycles, link codes and reference tables shipped with the crate.

use crate::cocycle::Cochain2;
use crate::diagram::{parse_link_file, NamedDiagram};
use crate::rack::Rack;
use crate::table::GoldenTable;

pub const KNOTS: &str = include_str!("../data/knots.txt");
pub const LINKS: &str = include_str!("../data/links.txt");
pub const ALTERNATE_DIAGRAMS: &str = include_str!("../data/alternate_diagrams.txt");
pub const EXAMPLE3_RACK: &str = include_str!("../data/racks/example3.txt");

/// A rack, a reduced cocycle on it, and the expected invariant table.
#[derive(Debug, Clone, Copy)]
pub struct TableExample {
    pub name: &'static str,
    pub rack: &'static str,
    pub cocycle: &'static str,
    pub golden: &'static str,
}

pub const TABLE_EXAMPLES: [TableExample; 3] = [
    TableExample {
        name: "example22",
        rack: include_str!("../data/racks/example22.txt"),
        cocycle: include_str!("../data/cocycles/example22.txt"),
        golden: include_str!("../data/golden/example22.txt"),
    },
    TableExample {
        name: "example23",
        rack: include_str!("../data/racks/example23.txt"),
        cocycle: include_str!("../data/cocycles/example23.txt"),
        golden: include_str!("../data/golden/example23.txt"),
    },
    TableExample {
        name: "example24",
        rack: include_str!("../data/racks/example24.txt"),
        cocycle: include_str!("../data/cocycles/example24.txt"),
        golden: include_str!("../data/golden/example24.txt"),
    },
];

impl TableExample {
    pub fn by_name(name: &str) -> Option<TableExample> {
        TABLE_EXAMPLES.iter().copied().find(|e| e.name == name)
    }

    pub fn rack(&self) -> Rack {
        Rack::parse(self.rack).expect("bundled rack is valid")
    }

    pub fn cocycle(&self) -> Cochain2 {
        Cochain2::parse_file(self.cocycle, self.rack().len()).expect("bundled cocycle parses")
    }

    pub fn golden(&self) -> GoldenTable {
        GoldenTable::parse(self.golden, self.cocycle().modulus()).expect("bundled table parses")
    }
}

pub fn example3_rack() -> Rack {
    Rack::parse(EXAMPLE3_RACK).expect("bundled rack is valid")
}

pub fn knots() -> Vec<NamedDiagram> {
    parse_link_file(KNOTS).expect("bundled knots parse")
}

pub fn links() -> Vec<NamedDiagram> {
    parse_link_file(LINKS).expect("bundled links parse")
}

/// Knots followed by links.
pub fn all_links() -> Vec<NamedDiagram> {
    let mut all = knots();
    all.extend(links());
    all
}

pub fn alternate_diagrams() -> Vec<NamedDiagram> {
    parse_link_file(ALTERNATE_DIAGRAMS).expect("bundled alternate diagrams parse")
}
