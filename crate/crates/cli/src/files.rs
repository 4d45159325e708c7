// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use hardcore::{Error, Result};

pub fn write(out: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(out)?;
    fs::write(out.join(name), text)?;
    Ok(())
}

pub fn read(out: &Path, name: &str) -> Result<String> {
    let path = out.join(name);
    fs::read_to_string(&path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

/// `key = value` lines, ignoring blanks, comments and any `CERT`/`END` framing.
pub fn kv(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

pub fn field<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<T> {
    let v = map.get(key).ok_or_else(|| Error::InvalidArgument(format!("report lacks `{key}`")))?;
    v.parse().map_err(|_| Error::InvalidArgument(format!("bad value for `{key}`: `{v}`")))
}

/// Fails the check with a message naming the claim.
pub fn ensure(ok: bool, what: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("check failed: {}", what.into())))
    }
}
