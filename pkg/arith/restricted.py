# restricted.py: Word-RAM operations simulated with addition, subtraction, multiplication,
# comparison and table lookup only.
#
# Every data operation goes through PrimitiveOps, which counts it. This module never uses
# the division, modulo, shift or bitwise operators (tests audit the syntax tree).

from typing import Dict, List, Optional, Sequence, Tuple

from models.counters import PRIMITIVES, OpCounter
from models.tables import ShiftTable, SmallDivTables
from utils.config import get_settings
from utils.errors import DivisionByZero, InvalidParams, SizeOverflow
from utils.logging import get_logger

logger = get_logger("RestrictedArith")

# Number of base-2^k digits every division works on.
DIGITS = 4
MIN_LOG_UNIVERSE = 6

# public method -> audited primitive category
AUDIT: Dict[str, str] = {
    "add": "add",
    "sub": "sub",
    "mul": "mul",
    "lt": "cmp",
    "le": "cmp",
    "eq": "cmp",
    "lookup": "lookup",
    "store": "lookup",
}


def audited_primitives() -> set:
    return set(AUDIT.values())


class PrimitiveOps:
    """The audited primitive layer; each call bumps one OpCounter field."""

    def __init__(self, counter: Optional[OpCounter] = None):
        self.counter = counter if counter is not None else OpCounter()

    def add(self, a: int, b: int) -> int:
        self.counter.add += 1
        return a + b

    def sub(self, a: int, b: int) -> int:
        self.counter.sub += 1
        return a - b

    def mul(self, a: int, b: int) -> int:
        self.counter.mul += 1
        return a * b

    def lt(self, a: int, b: int) -> int:
        self.counter.cmp += 1
        return 1 if a < b else 0

    def le(self, a: int, b: int) -> int:
        self.counter.cmp += 1
        return 1 if a <= b else 0

    def eq(self, a: int, b: int) -> int:
        self.counter.cmp += 1
        return 1 if a == b else 0

    def lookup(self, table: Sequence[int], i: int) -> int:
        self.counter.lookup += 1
        return table[i]

    def store(self, table: List[int], i: int, value: int) -> None:
        self.counter.lookup += 1
        table[i] = value


assert set(AUDIT.values()) <= set(PRIMITIVES)


def universe_for(n: int) -> int:
    """N = 2^(max(ceil(log2 n) + 2, 6)): room for 2n rank values plus sentinels."""
    if n < 1:
        raise InvalidParams(f"universe_for needs n >= 1, got {n}")
    log_n = (n - 1).bit_length()
    return pow(2, max(log_n + 2, MIN_LOG_UNIVERSE))


def log2_exact(N: int) -> int:
    L = N.bit_length() - 1
    if pow(2, L) != N:
        raise InvalidParams(f"N must be a power of two, got {N}")
    return L


def chunk_width(N: int) -> int:
    """k = floor(log2 N / 3)."""
    L = log2_exact(N)
    k = 0
    while 3 * (k + 1) <= L:
        k += 1
    return max(k, 1)


def _check_cap(entries: int, what: str) -> None:
    cap = get_settings().mem_cap
    if entries > cap:
        raise SizeOverflow(f"{what} needs {entries} entries, above PRESORT_GEOM_MEM_CAP={cap}")


def build_shift_table(N: int, k: int, ops: Optional[PrimitiveOps] = None) -> ShiftTable:
    """
    Build table[i] = floor(i / 2^k) for 0 <= i < N.
    Step-by-step:
    1. Phase 1: walk the multiples m of 2^k and mark table[m] with its quotient.
    2. Phase 2: sweep left to right, filling every unmarked entry with the last marked value.
    Raises SizeOverflow above the configured memory cap.
    """
    ops = ops if ops is not None else PrimitiveOps()
    L = log2_exact(N)
    if not 1 <= k <= L:
        raise InvalidParams(f"Shift amount must satisfy 1 <= k <= log2 N = {L}, got {k}")
    _check_cap(N, "Shift table")
    step = 1
    for _ in range(k):
        step = ops.mul(step, 2)
    table = [-1] * N
    # Phase 1: mark multiples
    m, q = 0, 0
    while ops.lt(m, N):
        ops.store(table, m, q)
        m = ops.add(m, step)
        q = ops.add(q, 1)
    # Phase 2: sweep-fill
    carry = 0
    for j in range(N):
        v = ops.lookup(table, j)
        if ops.lt(v, 0):
            ops.store(table, j, carry)
        else:
            carry = v
    return ShiftTable.model_construct(k=k, step=step, size=N, table=table)


def chunk_count(t: ShiftTable) -> int:
    count, reach = 0, 1
    while reach < t.size:
        reach *= t.step
        count += 1
    return count


def chunk(i: int, t: ShiftTable, ops: Optional[PrimitiveOps] = None, count: Optional[int] = None) -> List[int]:
    """Low-to-high k-bit chunks of i, each computed as i - (i >> k) * 2^k via the shift table."""
    ops = ops if ops is not None else PrimitiveOps()
    chunks = []
    for _ in range(count if count is not None else chunk_count(t)):
        hi = ops.lookup(t.table, i)
        chunks.append(ops.sub(i, ops.mul(hi, t.step)))
        i = hi
    return chunks


def recombine(chunks: Sequence[int], step: int, ops: Optional[PrimitiveOps] = None) -> int:
    ops = ops if ops is not None else PrimitiveOps()
    value = 0
    for c in reversed(chunks):
        value = ops.add(ops.mul(value, step), c)
    return value


def build_div_tables(k: int, ops: Optional[PrimitiveOps] = None) -> SmallDivTables:
    """
    Build the small-operand tables for base beta = 2^k by counting, never dividing.
    Step-by-step:
    1. Powers of two up to beta, and beta^0..beta^4.
    2. Normalisation factors: mark each power of two with its complement, sweep-fill.
    3. Estimate tables: for each normalised divisor, count quotient/remainder over all two-digit numerators.
    4. Split tables: the same counting with divisor beta over [0, 4 beta^2).
    """
    ops = ops if ops is not None else PrimitiveOps()
    # Step 1: powers
    twos = [1]
    for _ in range(k):
        twos.append(ops.mul(twos[-1], 2))
    beta = twos[k]
    half = twos[k - 1]
    powers = [1]
    for _ in range(DIGITS):
        powers.append(ops.mul(powers[-1], beta))
    square = powers[2]
    _check_cap(half * square * 2 + 8 * square, "Division tables")
    # Step 2: normalisation factors
    norm = [-1] * beta
    for j in range(k):
        ops.store(norm, twos[j], twos[k - 1 - j])
    carry = -1
    for v in range(1, beta):
        f = ops.lookup(norm, v)
        if ops.lt(f, 0):
            ops.store(norm, v, carry)
        else:
            carry = f
    # Step 3: estimate tables
    est_quot, est_rem = [], []
    for v in range(half, beta):
        quot, rem = _count_division(square, v, ops)
        est_quot.append(quot)
        est_rem.append(rem)
    # Step 4: split tables
    split_quot, split_rem = _count_division(ops.mul(4, square), beta, ops)
    return SmallDivTables.model_construct(
        k=k, beta=beta, est_quot=est_quot, est_rem=est_rem,
        split_quot=split_quot, split_rem=split_rem, norm=norm, powers=powers,
    )


def _count_division(limit: int, divisor: int, ops: PrimitiveOps) -> Tuple[List[int], List[int]]:
    quot, rem = [0] * limit, [0] * limit
    q, r = 0, 0
    for u in range(limit):
        ops.store(quot, u, q)
        ops.store(rem, u, r)
        r = ops.add(r, 1)
        if ops.eq(r, divisor):
            r = 0
            q = ops.add(q, 1)
    return quot, rem


class WordDivider:
    """
    Floor division of words below N using only audited primitives.

    Knuth-style normalised long division over DIGITS base-beta digits. Every call executes
    the same primitive sequence: corrections and add-back are applied as 0/1 multipliers.
    """

    def __init__(self, N: int, ops: Optional[PrimitiveOps] = None):
        self.N = N
        self.ops = ops if ops is not None else PrimitiveOps()
        build_ops = PrimitiveOps()
        self.k = chunk_width(N)
        self.shift = build_shift_table(N, self.k, build_ops)
        self.tables = build_div_tables(self.k, build_ops)
        self.build_ops = build_ops.counter
        logger.debug(f"WordDivider ready: N={N} k={self.k} build_ops={build_ops.counter.total}")

    def _split(self, x: int) -> Tuple[int, int]:
        ops, tb = self.ops, self.tables
        return ops.lookup(tb.split_quot, x), ops.lookup(tb.split_rem, x)

    def _scale(self, digits: List[int], factor: int) -> List[int]:
        ops = self.ops
        out, carry = [], 0
        for i in range(DIGITS):
            carry, digit = self._split(ops.add(ops.mul(ops.lookup(digits, i), factor), carry))
            out.append(digit)
        out.append(carry)
        return out

    def _shift_into(self, digits: List[int], offset: int, width: int) -> List[int]:
        ops = self.ops
        buf = [0] * (2 * DIGITS + 1)
        for i in range(DIGITS + 1):
            ops.store(buf, ops.add(i, offset), ops.lookup(digits, i))
        return buf[:width]

    def divmod(self, a: int, b: int) -> Tuple[int, int]:
        """
        Return (floor(a / b), a mod b) for words 0 <= a, b < N.
        Step-by-step:
        1. Split a and b into DIGITS base-beta digits with the shift table.
        2. Normalise: find b's top digit, scale by a power of two and shift by whole digits
           so the divisor's top digit lies in [beta/2, beta).
        3. For each quotient digit: estimate from the top two remainder digits, apply two
           branch-free corrections, multiply-subtract, and add back on borrow.
        4. Recombine the quotient digits; the remainder is a - q * b.
        Raises DivisionByZero when b == 0.
        """
        ops, tb = self.ops, self.tables
        if not (0 <= a < self.N and 0 <= b < self.N):
            raise InvalidParams(f"divmod operands must be words below {self.N}, got ({a}, {b})")
        if ops.eq(b, 0):
            raise DivisionByZero(f"divmod({a}, 0)")
        beta = tb.beta
        half = ops.lookup(tb.norm, 1)
        offset = ops.mul(4, beta)
        # Step 1: digits
        ad = chunk(a, self.shift, ops, DIGITS)
        bd = chunk(b, self.shift, ops, DIGITS)
        # Step 2: normalisation
        top = ops.add(ops.add(ops.le(ops.lookup(tb.powers, 1), b), ops.le(ops.lookup(tb.powers, 2), b)),
                      ops.le(ops.lookup(tb.powers, 3), b))
        factor = ops.lookup(tb.norm, ops.lookup(bd, top))
        shift = ops.sub(DIGITS - 1, top)
        v = self._shift_into(self._scale(bd, factor), shift, DIGITS)
        u = self._shift_into(self._scale(ad, factor), shift, 2 * DIGITS + 1)
        v_top = ops.lookup(v, DIGITS - 1)
        v_next = ops.lookup(v, DIGITS - 2)
        est_q = ops.lookup(tb.est_quot, ops.sub(v_top, half))
        est_r = ops.lookup(tb.est_rem, ops.sub(v_top, half))
        # Step 3: one quotient digit per window position
        q_digits = []
        for j in range(DIGITS, -1, -1):
            u_top = ops.lookup(u, ops.add(j, DIGITS))
            num = ops.add(ops.mul(u_top, beta), ops.lookup(u, ops.add(j, DIGITS - 1)))
            qhat, rhat = ops.lookup(est_q, num), ops.lookup(est_r, num)
            for _ in range(2):
                big = ops.le(beta, qhat)
                room = ops.lt(rhat, beta)
                over = ops.lt(ops.add(ops.mul(rhat, beta), ops.lookup(u, ops.add(j, DIGITS - 2))),
                              ops.mul(qhat, v_next))
                fix = ops.mul(room, ops.sub(ops.add(big, over), ops.mul(big, over)))
                qhat = ops.sub(qhat, fix)
                rhat = ops.add(rhat, ops.mul(fix, v_top))
            # multiply and subtract
            borrow = 0
            for i in range(DIGITS):
                p_hi, p_lo = self._split(ops.mul(qhat, ops.lookup(v, i)))
                pos = ops.add(i, j)
                t = ops.sub(ops.sub(ops.lookup(u, pos), borrow), p_lo)
                t_hi, t_lo = self._split(ops.add(t, offset))
                ops.store(u, pos, t_lo)
                borrow = ops.sub(p_hi, ops.sub(t_hi, 4))
            pos = ops.add(j, DIGITS)
            t = ops.sub(ops.lookup(u, pos), borrow)
            negative = ops.lt(t, 0)
            qhat = ops.sub(qhat, negative)
            # add back
            carry = 0
            for i in range(DIGITS):
                at = ops.add(i, j)
                s = ops.add(ops.add(ops.lookup(u, at), ops.mul(negative, ops.lookup(v, i))), carry)
                carry, digit = self._split(s)
                ops.store(u, at, digit)
            ops.store(u, pos, ops.add(t, carry))
            q_digits.append(qhat)
        # Step 4: recombine
        q = 0
        for digit in q_digits:
            q = ops.add(ops.mul(q, beta), digit)
        r = ops.sub(a, ops.mul(q, b))
        return q, r
