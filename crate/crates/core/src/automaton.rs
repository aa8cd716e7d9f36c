//! Suffix automaton over letter codes, optionally generalized to several
//! strings. Used for piece detection and for relator-subword lookup.

const NONE: u32 = u32::MAX;

pub(crate) struct SuffixAutomaton {
    sigma: usize,
    next: Vec<u32>,
    pub(crate) link: Vec<u32>,
    pub(crate) len: Vec<u32>,
    /// End position of the first occurrence (in the string that created it).
    pub(crate) first_end: Vec<u32>,
    last: u32,
}

impl SuffixAutomaton {
    pub(crate) fn new(sigma: usize, capacity: usize) -> Self {
        let mut sa = SuffixAutomaton {
            sigma,
            next: Vec::with_capacity(capacity * sigma),
            link: Vec::with_capacity(capacity),
            len: Vec::with_capacity(capacity),
            first_end: Vec::with_capacity(capacity),
            last: 0,
        };
        sa.add_state(0, NONE, 0);
        sa
    }

    pub(crate) fn build(sigma: usize, text: &[usize]) -> Self {
        let mut sa = SuffixAutomaton::new(sigma, 2 * text.len() + 1);
        for (i, &c) in text.iter().enumerate() {
            sa.extend(c, i as u32);
        }
        sa
    }

    fn add_state(&mut self, len: u32, link: u32, first_end: u32) -> u32 {
        let id = self.len.len() as u32;
        self.next.extend(std::iter::repeat_n(NONE, self.sigma));
        self.len.push(len);
        self.link.push(link);
        self.first_end.push(first_end);
        id
    }

    #[inline]
    pub(crate) fn trans(&self, state: u32, c: usize) -> Option<u32> {
        let t = self.next[state as usize * self.sigma + c];
        (t != NONE).then_some(t)
    }

    #[inline]
    fn set(&mut self, state: u32, c: usize, to: u32) {
        self.next[state as usize * self.sigma + c] = to;
    }

    pub(crate) fn states(&self) -> usize {
        self.len.len()
    }

    /// Starts a new string of a generalized automaton.
    pub(crate) fn reset(&mut self) {
        self.last = 0;
    }

    fn clone_state(&mut self, q: u32, len: u32) -> u32 {
        let cl = self.add_state(len, self.link[q as usize], self.first_end[q as usize]);
        for c in 0..self.sigma {
            let t = self.next[q as usize * self.sigma + c];
            self.next[cl as usize * self.sigma + c] = t;
        }
        cl
    }

    /// Appends `c` (at position `pos` of the current string); returns the
    /// state of the whole current prefix.
    pub(crate) fn extend(&mut self, c: usize, pos: u32) -> u32 {
        let last = self.last;
        if let Some(q) = self.trans(last, c) {
            // generalized case: the prefix already exists
            if self.len[q as usize] == self.len[last as usize] + 1 {
                self.last = q;
                return q;
            }
            let cl = self.clone_state(q, self.len[last as usize] + 1);
            self.link[q as usize] = cl;
            let mut p = last;
            while p != NONE && self.trans(p, c) == Some(q) {
                self.set(p, c, cl);
                p = self.link[p as usize];
            }
            self.last = cl;
            return cl;
        }
        let cur = self.add_state(self.len[last as usize] + 1, NONE, pos);
        let mut p = last;
        while p != NONE && self.trans(p, c).is_none() {
            self.set(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.trans(p, c).unwrap();
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let cl = self.clone_state(q, self.len[p as usize] + 1);
                while p != NONE && self.trans(p, c) == Some(q) {
                    self.set(p, c, cl);
                    p = self.link[p as usize];
                }
                self.link[q as usize] = cl;
                self.link[cur as usize] = cl;
            }
        }
        self.last = cur;
        cur
    }

    /// State reached by reading `s` from the root.
    pub(crate) fn walk(&self, s: impl IntoIterator<Item = usize>) -> Option<u32> {
        let mut st = 0;
        for c in s {
            st = self.trans(st, c)?;
        }
        Some(st)
    }

    /// For each position `j` of `text`, the length of the longest substring of
    /// the indexed string ending at `j`.
    pub(crate) fn matching_lengths(&self, text: &[usize]) -> Vec<u32> {
        let mut out = Vec::with_capacity(text.len());
        let (mut st, mut l) = (0u32, 0u32);
        for &c in text {
            loop {
                if let Some(t) = self.trans(st, c) {
                    st = t;
                    l += 1;
                    break;
                }
                if st == 0 {
                    l = 0;
                    break;
                }
                st = self.link[st as usize];
                l = self.len[st as usize];
            }
            out.push(l);
        }
        out
    }

    /// States sorted by increasing `len`.
    pub(crate) fn order_by_len(&self) -> Vec<u32> {
        let max = *self.len.iter().max().unwrap_or(&0) as usize;
        let mut count = vec![0usize; max + 2];
        for &l in &self.len {
            count[l as usize + 1] += 1;
        }
        for i in 1..count.len() {
            count[i] += count[i - 1];
        }
        let mut order = vec![0u32; self.len.len()];
        for (s, &l) in self.len.iter().enumerate() {
            order[count[l as usize]] = s as u32;
            count[l as usize] += 1;
        }
        order
    }
}
