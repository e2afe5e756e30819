use crate::error::{invalid, Error, Result};
use crate::traffic::ObjectId;

const NIL: u32 = u32::MAX;
const ABSENT: u32 = u32::MAX - 1;

/// LRU-ordered cache contents of one station, at most `capacity` objects.
///
/// Objects are dense ids, so the recency list is kept as two link arrays
/// indexed by id (grown on demand); touch, insert and lookup are O(1).
#[derive(Clone, Debug)]
pub struct CacheInventory {
    capacity: usize,
    len: usize,
    head: u32,
    tail: u32,
    // prev[id] == ABSENT marks an uncached object
    prev: Vec<u32>,
    next: Vec<u32>,
}

impl PartialEq for CacheInventory {
    fn eq(&self, other: &Self) -> bool {
        self.capacity == other.capacity && self.iter().eq(other.iter())
    }
}

impl Eq for CacheInventory {}

impl CacheInventory {
    pub fn new(capacity: usize) -> Result<Self> {
        Self::with_universe(capacity, 0)
    }

    /// Pre-sizes the link arrays for ids below `universe`.
    pub fn with_universe(capacity: usize, universe: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(invalid("k", "cache capacity must be at least 1"));
        }
        if universe >= ABSENT as usize {
            return Err(invalid("universe", "object ids must fit below u32::MAX - 1"));
        }
        Ok(CacheInventory {
            capacity,
            len: 0,
            head: NIL,
            tail: NIL,
            prev: vec![ABSENT; universe],
            next: vec![NIL; universe],
        })
    }

    /// Inventory holding `objects`, first element at the MRU position.
    pub fn from_objects(capacity: usize, objects: impl IntoIterator<Item = ObjectId>) -> Result<Self> {
        let objects: Vec<ObjectId> = objects.into_iter().collect();
        if objects.len() > capacity {
            return Err(invalid(
                "objects",
                format!("{} objects exceed capacity {capacity}", objects.len()),
            ));
        }
        let universe = objects.iter().map(|o| o.index() + 1).max().unwrap_or(0);
        let mut inv = Self::with_universe(capacity, universe)?;
        for &o in objects.iter().rev() {
            inv.insert(o)?;
        }
        Ok(inv)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.capacity
    }

    pub fn contains(&self, object: ObjectId) -> bool {
        self.prev.get(object.index()).is_some_and(|&p| p != ABSENT)
    }

    /// Moves `object` to the MRU position if cached. Returns whether it was.
    pub fn touch(&mut self, object: ObjectId) -> bool {
        if !self.contains(object) {
            return false;
        }
        let id = object.0;
        if self.head != id {
            self.unlink(id);
            self.push_front(id);
        }
        true
    }

    /// Places an uncached `object` at the MRU position, evicting and
    /// returning the LRU object when the capacity is exceeded.
    pub fn insert(&mut self, object: ObjectId) -> Result<Option<ObjectId>> {
        if self.contains(object) {
            return Err(Error::AlreadyCached(object.0));
        }
        if object.0 >= ABSENT {
            return Err(invalid("object", "id too large"));
        }
        let i = object.index();
        if i >= self.prev.len() {
            let n = (i + 1).max(self.prev.len() * 2);
            self.prev.resize(n, ABSENT);
            self.next.resize(n, NIL);
        }
        self.push_front(object.0);
        self.len += 1;
        if self.len > self.capacity {
            let victim = self.tail;
            self.unlink(victim);
            self.prev[victim as usize] = ABSENT;
            self.len -= 1;
            return Ok(Some(ObjectId(victim)));
        }
        Ok(None)
    }

    /// Objects from MRU to LRU.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            inv: self,
            cursor: self.head,
        }
    }

    pub fn to_vec(&self) -> Vec<ObjectId> {
        self.iter().collect()
    }

    fn unlink(&mut self, id: u32) {
        let (p, n) = (self.prev[id as usize], self.next[id as usize]);
        if p == NIL {
            self.head = n;
        } else {
            self.next[p as usize] = n;
        }
        if n == NIL {
            self.tail = p;
        } else {
            self.prev[n as usize] = p;
        }
    }

    fn push_front(&mut self, id: u32) {
        self.prev[id as usize] = NIL;
        self.next[id as usize] = self.head;
        if self.head == NIL {
            self.tail = id;
        } else {
            self.prev[self.head as usize] = id;
        }
        self.head = id;
    }
}

pub struct Iter<'a> {
    inv: &'a CacheInventory,
    cursor: u32,
}

impl Iterator for Iter<'_> {
    type Item = ObjectId;

    fn next(&mut self) -> Option<ObjectId> {
        if self.cursor == NIL {
            return None;
        }
        let id = self.cursor;
        self.cursor = self.inv.next[id as usize];
        Some(ObjectId(id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Vec<ObjectId> {
        v.iter().map(|&i| ObjectId(i)).collect()
    }

    #[test]
    fn touch_moves_to_front() {
        let mut inv = CacheInventory::from_objects(2, ids(&[0, 1])).unwrap();
        assert!(inv.touch(ObjectId(1)));
        assert_eq!(inv.to_vec(), ids(&[1, 0]));
    }

    #[test]
    fn touch_miss_leaves_order() {
        let mut inv = CacheInventory::from_objects(2, ids(&[0, 1])).unwrap();
        assert!(!inv.touch(ObjectId(2)));
        assert_eq!(inv.to_vec(), ids(&[0, 1]));
        let mut empty = CacheInventory::new(3).unwrap();
        assert!(!empty.touch(ObjectId(7)));
        assert!(empty.is_empty());
    }

    #[test]
    fn insert_evicts_lru() {
        let mut inv = CacheInventory::from_objects(2, ids(&[0, 1])).unwrap();
        assert_eq!(inv.insert(ObjectId(2)).unwrap(), Some(ObjectId(1)));
        assert_eq!(inv.to_vec(), ids(&[2, 0]));
        assert!(!inv.contains(ObjectId(1)));
    }

    #[test]
    fn insert_without_eviction() {
        let mut inv = CacheInventory::from_objects(2, ids(&[0])).unwrap();
        assert_eq!(inv.insert(ObjectId(2)).unwrap(), None);
        assert_eq!(inv.to_vec(), ids(&[2, 0]));
        let mut one = CacheInventory::new(1).unwrap();
        assert_eq!(one.insert(ObjectId(2)).unwrap(), None);
        assert_eq!(one.to_vec(), ids(&[2]));
    }

    #[test]
    fn inserting_cached_object_is_rejected() {
        let mut inv = CacheInventory::from_objects(2, ids(&[0])).unwrap();
        assert!(matches!(inv.insert(ObjectId(0)), Err(Error::AlreadyCached(0))));
    }

    #[test]
    fn capacity_one_replaces() {
        let mut inv = CacheInventory::new(1).unwrap();
        inv.insert(ObjectId(5)).unwrap();
        assert_eq!(inv.insert(ObjectId(9)).unwrap(), Some(ObjectId(5)));
        assert!(inv.touch(ObjectId(9)));
        assert_eq!(inv.len(), 1);
    }

    #[test]
    fn zero_capacity_rejected() {
        assert!(CacheInventory::new(0).is_err());
        assert!(CacheInventory::from_objects(1, ids(&[0, 1])).is_err());
    }
}
