use std::fmt;

use distance_energy::Error;

/// Failure classes, each with a fixed exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Usage,
    Input,
    Io,
    Capacity,
    Domain,
    Pole,
    IllConditioned,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Usage => "usage",
            Kind::Input => "input",
            Kind::Io => "io",
            Kind::Capacity => "capacity",
            Kind::Domain => "domain",
            Kind::Pole => "pole",
            Kind::IllConditioned => "ill-conditioned",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Usage | Kind::Input | Kind::Io => 2,
            Kind::Capacity => 3,
            Kind::Domain | Kind::Pole | Kind::IllConditioned => 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: Kind,
    pub reason: String,
}

impl CliError {
    pub fn new(kind: Kind, reason: impl Into<String>) -> Self {
        Self {
            kind,
            reason: reason.into(),
        }
    }

    pub fn usage(reason: impl Into<String>) -> Self {
        Self::new(Kind::Usage, reason)
    }

    pub fn input(reason: impl Into<String>) -> Self {
        Self::new(Kind::Input, reason)
    }
}

/// `error kind=<kind> reason="<reason>"` on a single line.
impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reason: String = self
            .reason
            .chars()
            .map(|c| match c {
                '"' => '\'',
                '\n' | '\r' | '\t' => ' ',
                c => c,
            })
            .collect();
        write!(
            f,
            "error kind={} reason=\"{}\"",
            self.kind.as_str(),
            reason.trim()
        )
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Domain(_) | Error::TableTooShort { .. } => Kind::Domain,
            Error::Capacity(_) => Kind::Capacity,
            Error::Pole(_) => Kind::Pole,
            Error::IllConditioned { .. } => Kind::IllConditioned,
            Error::Format(_) => Kind::Input,
            Error::Io(_) => Kind::Io,
        };
        Self::new(kind, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new(Kind::Io, e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_rendering() {
        let e = CliError::new(Kind::Pole, "s = \"1\"\nnear the pole");
        assert_eq!(
            e.to_string(),
            "error kind=pole reason=\"s = '1' near the pole\""
        );
        assert_eq!(e.kind.exit_code(), 4);
    }

    #[test]
    fn core_errors_map_to_codes() {
        let cap: CliError = Error::Capacity("big".into()).into();
        assert_eq!(cap.kind.exit_code(), 3);
        let dom: CliError = Error::Domain("bad".into()).into();
        assert_eq!(dom.kind.exit_code(), 4);
    }
}
