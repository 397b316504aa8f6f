//! Name-keyed registries of interchangeable strategies.

use crate::error::{Error, Result};

/// Anything that can be looked up by a stable name.
pub trait Named {
    fn name(&self) -> &'static str;
}

/// An ordered set of boxed strategies selected by name at runtime.
pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds a strategy, replacing any previous one with the same name.
    pub fn register(&mut self, entry: Box<T>) -> &mut Self {
        self.entries.retain(|e| e.name() != entry.name());
        self.entries.push(entry);
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|e| e.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Named {
        fn greet(&self) -> String;
    }

    struct Hello(&'static str);

    impl Named for Hello {
        fn name(&self) -> &'static str {
            self.0
        }
    }

    impl Greeter for Hello {
        fn greet(&self) -> String {
            format!("hello from {}", self.0)
        }
    }

    #[test]
    fn lookup_and_replace() {
        let mut reg: Registry<dyn Greeter> = Registry::new("greeter");
        reg.register(Box::new(Hello("a")))
            .register(Box::new(Hello("b")));
        assert_eq!(reg.names(), vec!["a", "b"]);
        assert_eq!(reg.get("b").unwrap().greet(), "hello from b");
        reg.register(Box::new(Hello("a")));
        assert_eq!(reg.names(), vec!["b", "a"]);
        let err = reg.get("zzz").err().unwrap();
        assert_eq!(err.to_string(), "unknown greeter `zzz`");
    }
}
