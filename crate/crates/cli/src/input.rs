use std::path::Path;
use std::sync::Arc;

use cayley_drg::group::{make_group, GroupSpec, GroupTable, Subgroup};
use cayley_drg::IntersectionArray;

use crate::CliError;

/// A group file path, or a group spec such as `Z7`, `Q12` or `dih(Z4xZ2)`.
pub fn load_group(source: &str) -> Result<Arc<GroupTable>, CliError> {
    let path = Path::new(source);
    let table = if path.is_file() {
        GroupTable::from_json(&std::fs::read_to_string(path)?)?
    } else {
        let spec: GroupSpec = source
            .parse()
            .map_err(|e| CliError::Usage(format!("`{source}` is neither a group file nor a group spec ({e})")))?;
        make_group(&spec)?
    };
    Ok(Arc::new(table))
}

/// Comma-separated labels, indices or words; an empty string is the empty set.
pub fn parse_set(g: &GroupTable, text: &str) -> Result<Vec<usize>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(g.parse_set(text)?)
}

pub fn parse_element(g: &GroupTable, text: &str) -> Result<usize, CliError> {
    Ok(g.parse_element(text)?)
}

/// The subgroup generated by the listed elements.
pub fn parse_subgroup(g: &GroupTable, text: &str) -> Result<Subgroup, CliError> {
    let gens = parse_set(g, text)?;
    Ok(g.generated_subgroup(&gens))
}

pub fn parse_array(text: &str) -> Result<IntersectionArray, CliError> {
    Ok(text.parse()?)
}

pub fn write_dot(path: Option<&Path>, dot: impl FnOnce() -> String) -> Result<(), CliError> {
    if let Some(path) = path {
        std::fs::write(path, dot())?;
    }
    Ok(())
}
