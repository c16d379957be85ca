//! Category → function and (room function, class) → category tables.
//!
//! Both files are UTF-8 text: a versioned header line, then one
//! comma-separated record per line. Blank lines and `#` comments are
//! skipped.
//!
//! ```text
//! mss-category-table 1
//! chair,sittable
//! desk,workable
//! lamp,
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SceneError;

pub const CATEGORY_HEADER: &str = "mss-category-table";
pub const ASSOCIATION_HEADER: &str = "mss-association-table";
pub const TABLE_VERSION: u32 = 1;

const DEFAULT_CATEGORIES: &str = include_str!("../../data/categories.txt");
const DEFAULT_ASSOCIATIONS: &str = include_str!("../../data/associations.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionClass {
    Walkable,
    Sittable,
    Workable,
}

impl FunctionClass {
    pub const ALL: [FunctionClass; 3] = [FunctionClass::Walkable, FunctionClass::Sittable, FunctionClass::Workable];

    pub fn as_str(&self) -> &'static str {
        match self {
            FunctionClass::Walkable => "walkable",
            FunctionClass::Sittable => "sittable",
            FunctionClass::Workable => "workable",
        }
    }
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionClass {
    type Err = SceneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "walkable" | "w" => Ok(FunctionClass::Walkable),
            "sittable" | "s" => Ok(FunctionClass::Sittable),
            "workable" | "t" => Ok(FunctionClass::Workable),
            other => Err(SceneError::UnknownFunction(other.to_string())),
        }
    }
}

/// Maps an object category to the function classes it provides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryTable {
    entries: BTreeMap<String, BTreeSet<FunctionClass>>,
}

impl Default for CategoryTable {
    fn default() -> Self {
        Self::parse(DEFAULT_CATEGORIES).expect("bundled category table is valid")
    }
}

impl CategoryTable {
    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let mut entries = BTreeMap::new();
        for (line_no, fields) in records(text, CATEGORY_HEADER)? {
            let (category, functions) = match fields.as_slice() {
                [c] => (c.as_str(), ""),
                [c, f] => (c.as_str(), f.as_str()),
                _ => return Err(SceneError::TableSyntax { line: line_no, reason: "expected `category,functions`".into() }),
            };
            let mut set = BTreeSet::new();
            for f in functions.split(';').map(str::trim).filter(|f| !f.is_empty()) {
                let class: FunctionClass = f.parse().map_err(|_| SceneError::TableSyntax {
                    line: line_no,
                    reason: format!("unknown function `{f}`"),
                })?;
                if class == FunctionClass::Walkable {
                    return Err(SceneError::TableSyntax { line: line_no, reason: "objects cannot be walkable".into() });
                }
                set.insert(class);
            }
            entries.insert(category.to_ascii_lowercase(), set);
        }
        Ok(Self { entries })
    }

    pub fn contains(&self, category: &str) -> bool {
        self.entries.contains_key(&category.to_ascii_lowercase())
    }

    /// Function classes for `category`; unknown categories map to none.
    pub fn functions(&self, category: &str) -> BTreeSet<FunctionClass> {
        self.entries.get(&category.to_ascii_lowercase()).cloned().unwrap_or_default()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{CATEGORY_HEADER} {TABLE_VERSION}\n");
        for (c, fs) in &self.entries {
            let f: Vec<&str> = fs.iter().map(|f| f.as_str()).collect();
            s.push_str(&format!("{c},{}\n", f.join(";")));
        }
        s
    }
}

/// Chooses the category used to furnish a mutual function region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationTable {
    entries: BTreeMap<(String, FunctionClass), String>,
}

impl Default for AssociationTable {
    fn default() -> Self {
        Self::parse(DEFAULT_ASSOCIATIONS).expect("bundled association table is valid")
    }
}

impl AssociationTable {
    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let mut entries = BTreeMap::new();
        for (line_no, fields) in records(text, ASSOCIATION_HEADER)? {
            let [room, class, category] = fields.as_slice() else {
                return Err(SceneError::TableSyntax {
                    line: line_no,
                    reason: "expected `room_function,function_class,category`".into(),
                });
            };
            let class: FunctionClass = class.parse().map_err(|_| SceneError::TableSyntax {
                line: line_no,
                reason: format!("unknown function `{class}`"),
            })?;
            entries.insert((room.to_ascii_lowercase(), class), category.to_ascii_lowercase());
        }
        Ok(Self { entries })
    }

    /// Category for `class` in a room of `room_function`, falling back to
    /// the `*` wildcard row.
    pub fn category(&self, room_function: &str, class: FunctionClass) -> Option<&str> {
        self.entries
            .get(&(room_function.to_ascii_lowercase(), class))
            .or_else(|| self.entries.get(&("*".to_string(), class)))
            .map(String::as_str)
    }
}

fn records(text: &str, header: &str) -> Result<Vec<(usize, Vec<String>)>, SceneError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let Some((_, first)) = lines.next() else {
        return Err(SceneError::TableSyntax { line: 1, reason: "missing header".into() });
    };
    let mut head = first.split_whitespace();
    if head.next() != Some(header) {
        return Err(SceneError::TableSyntax { line: 1, reason: format!("expected header `{header} <version>`") });
    }
    match head.next().and_then(|v| v.parse::<u32>().ok()) {
        Some(TABLE_VERSION) => {}
        _ => return Err(SceneError::TableSyntax { line: 1, reason: format!("unsupported version, expected {TABLE_VERSION}") }),
    }
    Ok(lines
        .map(|(i, l)| (i + 1, l.split(',').map(|f| f.trim().to_string()).collect()))
        .collect())
}
