use std::fs;
use std::path::{Path, PathBuf};

use antiunify::syntax::{parse_goals_with, ParseOptions};
use antiunify::{rename_apart, Goal, GoalDocument};

use crate::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn document(path: &Path, strict: bool) -> Result<GoalDocument, CliError> {
    let text = read(path)?;
    parse_goals_with(&text, ParseOptions { strict_arity: strict }).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Two goals from the command line: the first goal of each of two files, or
/// the first two goals of a single file.
pub fn pair(files: &[PathBuf], strict: bool) -> Result<(Goal, Goal), CliError> {
    match files {
        [one] => {
            let doc = document(one, strict)?;
            match doc.goals.as_slice() {
                [a, b, ..] => Ok((a.goal.clone(), b.goal.clone())),
                _ => Err(CliError::Usage(format!(
                    "{} holds {} goal(s); a single input file needs two",
                    one.display(),
                    doc.len()
                ))),
            }
        }
        [a, b] => Ok((first(a, strict)?, first(b, strict)?)),
        _ => Err(CliError::Usage("expected one or two goal files".into())),
    }
}

/// Like [`pair`], with the second goal renamed apart from the first.
pub fn disjoint_pair(files: &[PathBuf], strict: bool) -> Result<(Goal, Goal), CliError> {
    let (g1, g2) = pair(files, strict)?;
    Ok(rename_apart(&g1, &g2))
}

fn first(path: &Path, strict: bool) -> Result<Goal, CliError> {
    let doc = document(path, strict)?;
    doc.goals
        .into_iter()
        .next()
        .map(|g| g.goal)
        .ok_or_else(|| CliError::Usage(format!("{} contains no goal", path.display())))
}
