use std::process::Command;

fn main() {
    // version string for report provenance; "unknown" outside a git checkout
    let description = Command::new("git")
        .args(["describe", "--always", "--dirty", "--tags"])
        .output()
        .ok()
        .filter(|out| out.status.success())
        .and_then(|out| String::from_utf8(out.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string());
    println!("cargo:rustc-env=DISCLAB_GIT_VERSION={description}");
    println!("cargo:rerun-if-changed=build.rs");
}
