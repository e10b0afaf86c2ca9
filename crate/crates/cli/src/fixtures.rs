//! Bundled example models; `--model` accepts these names or a file path.

pub const FIXTURES: &[(&str, &str)] = &[
    ("fig1-ring", include_str!("../../../models/fig1-ring.toml")),
    (
        "uniform-complete-4",
        include_str!("../../../models/uniform-complete-4.toml"),
    ),
    ("hom-ring-4", include_str!("../../../models/hom-ring-4.toml")),
    (
        "het-ring-4-e07",
        include_str!("../../../models/het-ring-4-e07.toml"),
    ),
    (
        "het-ring-4-e09",
        include_str!("../../../models/het-ring-4-e09.toml"),
    ),
    (
        "tree-example",
        include_str!("../../../models/tree-example.toml"),
    ),
    (
        "singleton-fullset",
        include_str!("../../../models/singleton-fullset.toml"),
    ),
];

pub fn lookup(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}
