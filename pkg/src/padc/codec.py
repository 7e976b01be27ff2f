"""Encoder and decoder loops.

Renormalization comes in two flavours.  *Prefix* renormalization emits
the leading path digits shared by both interval edges and shifts them
out of the state; it is all that is needed while the interval stays
inside one top-level grid cell.  When the interval instead hugs a
level-1 grid point from both sides, *straddle* renormalization folds the
interval linearly around that pivot point without emitting anything,
remembering the pivot digit and how many folds are pending; the deferred
digits are written once the interval finally leaves the pivot (a run of
zeros when it exits to the right of the pivot, a run of P-1 digits when
it exits to the left).  The decoder mirrors every rescaling step on a
sliding window of N stream digits, tracked as the window's index value.

If the interval straddles a level-1 boundary too loosely for a fold, it
can shrink without either renormalization applying.  Before that starves
the model of grid resolution the coder gives up the thinner side of the
boundary, which costs a fraction of a digit of redundancy but restores
the width floor; the decoder resolves the same choice from its window.
This narrowing step is also the only escape route when straddle
renormalization is disabled (ar=False).

A coding session (state, model, stream) is single-owner; sessions over
distinct states are independent.
"""

from .core import (
    GridParams,
    common_path_len,
    interval_width,
    leading_path_digits,
    prefix_rescale,
    shortest_path_point,
    squeeze_second_digit,
    to_path,
    trimmed_len,
)
from .digitio import DigitReader


class MalformedStreamError(ValueError):
    """Digit stream is inconsistent with the declared coding session."""


def width_floor(params: GridParams) -> int:
    """Smallest width the rescaling phase can leave behind: one quarter
    of the ring (P**(N-2)) plus one grid unit.

    The bound is tight and follows from the renormalization conditions:
    an interval that still straddles a level-1 boundary after rescaling
    must keep one arm of at least P**(N-2) around the boundary, else a
    fold (or the narrowing valve) would have fired.  It also guarantees
    that models capped at a total of P**(N-2) never produce an empty
    symbol interval.
    """
    if params.N < 2:
        raise ValueError("width floor needs a grid of level N >= 2")
    return params.powers[params.N - 2] + 1


class CoderState:
    """Current interval as an index pair plus straddle bookkeeping.

    (l, r) = (0, 0) denotes the full interval; generally r = 0 on the
    right edge stands for P**N.  pivot is the level-1 digit being
    straddled (0 while inactive) and pending counts folds applied since
    the pivot was set; pending == 0 iff no fold is outstanding.
    """

    __slots__ = ("l", "r", "pivot", "pending", "params")

    def __init__(self, params: GridParams):
        self.l = 0
        self.r = 0
        self.pivot = 0
        self.pending = 0
        self.params = params

    def as_tuple(self):
        return (self.l, self.r, self.pivot, self.pending)


def renorm_prefix(state: CoderState):
    """Emit the edges' shared leading path digits and shift them out.

    No-op (empty emission) when the edges already disagree at the first
    digit.  Must not run while a fold is pending: the shared-prefix claim
    only holds for unfolded intervals.
    """
    assert state.pending == 0
    n = common_path_len(state.l, state.r, state.params)
    if n == 0:
        return []
    out = list(leading_path_digits(state.l, n, state.params))
    state.l = prefix_rescale(state.l, n, state.params)
    state.r = prefix_rescale(state.r, n, state.params)
    return out


def straddle_check(l: int, r: int, params: GridParams) -> bool:
    """True when the interval hugs a level-1 point within its innermost
    level-2 neighbourhood: l's path starts (n-1, P-1, ...) and r's path
    starts (n, 0, ...)."""
    if params.N < 2:
        return False
    top = params.powers[params.N - 1]
    sub = params.powers[params.N - 2]
    if r // top - l // top != 1:
        return False
    return (l // sub) % params.P == params.P - 1 and (r // sub) % params.P == 0


def straddle_fold(state: CoderState):
    """Fold the interval around the straddled level-1 point.

    Sets the pivot on first use, bumps the pending count, and removes
    path digit 1 from both edges (appending a zero at the bottom), which
    doubles the interval's width without emitting anything.
    """
    params = state.params
    if state.pivot == 0:
        state.pivot = state.r // params.powers[params.N - 1]
    state.pending += 1
    state.l = squeeze_second_digit(state.l, params)
    state.r = squeeze_second_digit(state.r, params)


def exits_left(pivot: int, l: int, params: GridParams) -> bool:
    """Interval now lies at or right of the pivot point."""
    return l // params.powers[params.N - 1] >= pivot


def exits_right(pivot: int, r: int, params: GridParams) -> bool:
    """Interval now lies left of the pivot point (r at most the pivot).

    r == pivot * P**(N-1) means the right edge sits exactly on the
    pivot, which still puts the whole half-open interval on its left.
    """
    top = params.powers[params.N - 1]
    return r // top < pivot or r == pivot * top


def straddle_flush(state: CoderState):
    """Resolve pending folds once the interval has left the pivot.

    Exit to the left of the interval (interval right of pivot): the
    deferred digits are the pivot followed by pending zeros.  Exit to
    the right (interval left of pivot): pivot-1 followed by pending
    copies of P-1.  Both edges then shed one path digit.  Returns None
    while the interval still straddles the pivot.  The two exits cannot
    both apply to a nonempty interval; left is checked first, which also
    resolves the r = 0 right edge correctly.
    """
    params = state.params
    assert state.pending > 0
    if exits_left(state.pivot, state.l, params):
        out = [state.pivot] + [0] * state.pending
    elif exits_right(state.pivot, state.r, params):
        out = [state.pivot - 1] + [params.P - 1] * state.pending
    else:
        return None
    top = params.powers[params.N - 1]
    state.l = (state.l % top) * params.P
    state.r = (state.r % top) * params.P
    state.pivot = 0
    state.pending = 0
    return out


class Encoder:
    """Streaming encoder: feed symbols with step(), then finish().

    Emitted digits are returned from each call in stream order.  The
    model's end marker (model.eom) is coded by finish(), not step().
    """

    def __init__(self, model, *, ar: bool = True):
        self.model = model
        self.params = model.params
        if self.params.N < 2:
            raise ValueError("coding needs a grid of level N >= 2")
        model.validate_for_coding()
        self.state = CoderState(self.params)
        self.ar = ar
        self.floor = width_floor(self.params)
        self.finished = False

    def step(self, symbol):
        if self.finished:
            raise ValueError("encoder already finished")
        if self.model.eom is not None and symbol == self.model.eom:
            raise ValueError("end marker is coded by finish()")
        st = self.state
        st.l, st.r = self.model.code(symbol, st.l, st.r)
        out = self._rescale()
        self._check_floor()
        return out

    def _check_floor(self):
        w = interval_width(self.state.l, self.state.r, self.params)
        if w < self.floor:
            raise AssertionError(f"width floor violated: {w} < {self.floor}")

    def _rescale(self):
        st = self.state
        params = self.params
        out = []
        if st.pending:
            flushed = straddle_flush(st)
            if flushed is not None:
                out.extend(flushed)
        if st.pending == 0:
            out.extend(renorm_prefix(st))
        if self.ar:
            while straddle_check(st.l, st.r, params):
                straddle_fold(st)
        top = params.powers[params.N - 1]
        while st.pending == 0 and interval_width(st.l, st.r, params) < self.floor:
            # Interval shrank onto a level-1 boundary with no fold to
            # expand it: keep the wider side so prefix renorm can fire.
            # With folds enabled this valve never triggers (the fold and
            # exit conditions already keep the width above the floor);
            # it is the only escape route when ar is off.
            boundary = (st.l // top + 1) * top
            right_edge = st.r if st.r else params.size
            if boundary - st.l >= right_edge - boundary:
                st.r = boundary
            else:
                st.l = boundary
            out.extend(renorm_prefix(st))
            if self.ar:
                while straddle_check(st.l, st.r, params):
                    straddle_fold(st)
        return out

    def finish(self, flush: str = "min"):
        """Code the end marker and flush the final point.

        flush="min" emits the path of the shortest-path point with
        trailing zeros trimmed; flush="left" emits the full path of the
        left edge.  When folds are still pending, the pivot digit alone
        pins the final point.  Models without an end marker
        (model.eom is None) emit digit-count-delimited streams and flush
        nothing; their state must already be back at the full interval.
        """
        if self.finished:
            raise ValueError("encoder already finished")
        if flush not in ("min", "left"):
            raise ValueError(f"unknown flush mode {flush!r}")
        st = self.state
        out = []
        if self.model.eom is None:
            if st.as_tuple() != (0, 0, 0, 0):
                raise ValueError(
                    "delimiterless model left residual state; cannot flush"
                )
        else:
            st.l, st.r = self.model.code(self.model.eom, st.l, st.r)
            if st.pending:
                flushed = straddle_flush(st)
                if flushed is not None:
                    out.extend(flushed)
            if st.pending == 0:
                q = st.l if flush == "left" else shortest_path_point(
                    st.l, st.r, self.params
                )
                path = to_path(q, self.params)
                if flush == "left":
                    out.extend(path.digits)
                else:
                    out.extend(path.digits[: trimmed_len(path)])
            else:
                out.append(st.pivot)
        self.finished = True
        return out


class CodeWindow:
    """Length-N lookahead over the digit stream, in path order, tracked
    as its index value; digits past the stream end read as zero."""

    def __init__(self, reader: DigitReader, params: GridParams, budget):
        self.reader = reader
        self.params = params
        self._budget = budget
        self.g = self._pull(params.N)

    def _pull(self, n: int) -> int:
        if self.reader.consumed + n > self._budget():
            raise MalformedStreamError(
                "digit stream exhausted before the message ended"
            )
        v = 0
        for _ in range(n):
            v = v * self.params.P + self.reader.get_digit()
        return v

    def shift(self, n: int):
        """Drop the first n window digits, refill at the back."""
        params = self.params
        keep = self.g % params.powers[params.N - n]
        self.g = keep * params.powers[n] + self._pull(n)

    def fold(self):
        """Mirror a straddle fold: cut window digit 1, refill one."""
        self.g = squeeze_second_digit(self.g, self.params) + self._pull(1)


class Decoder:
    """Streaming decoder over a DigitReader.

    Mirrors the encoder's state transitions exactly, so at every symbol
    boundary (l, r, pivot, pending) match the encoder's.  A stream that
    needs more digits than the declared count plus the window and any
    pending folds can supply is reported as malformed rather than
    silently truncated.
    """

    def __init__(self, reader: DigitReader, model, *, ar: bool = True):
        self.model = model
        self.params = model.params
        if self.params.N < 2:
            raise ValueError("coding needs a grid of level N >= 2")
        model.validate_for_coding()
        if model.eom is None and getattr(model, "min_codeword_len", 1) == 0:
            raise ValueError("delimiterless decoding needs nonempty codewords")
        self.state = CoderState(self.params)
        self.ar = ar
        self.floor = width_floor(self.params)
        self.reader = reader
        self.window = CodeWindow(reader, self.params, self._read_budget)
        self.done = False

    def _read_budget(self) -> int:
        # Every read beyond the declared digits plus the initial window
        # is backed by a pending fold the encoder resolves (or trims) later.
        return self.reader.declared_count + self.params.N + self.state.pending

    @property
    def payload_consumed(self) -> int:
        """Stream digits consumed beyond the initial window fill."""
        return self.reader.consumed - self.params.N

    def next_symbol(self):
        if self.done:
            raise ValueError("decoder already finished")
        st = self.state
        st.l, st.r, symbol = self.model.decode(self.window.g, st.l, st.r)
        if self.model.eom is not None and symbol == self.model.eom:
            self.done = True
            return symbol
        self._rescale()
        w = interval_width(st.l, st.r, self.params)
        if w < self.floor:
            raise AssertionError(f"width floor violated: {w} < {self.floor}")
        return symbol

    def _drop_fold_state(self):
        st = self.state
        top = self.params.powers[self.params.N - 1]
        st.l = (st.l % top) * self.params.P
        st.r = (st.r % top) * self.params.P
        st.pivot = 0
        st.pending = 0
        self.window.shift(1)

    def _rescale(self):
        st = self.state
        params = self.params
        if st.pending:
            if exits_left(st.pivot, st.l, params) or exits_right(
                st.pivot, st.r, params
            ):
                self._drop_fold_state()
        if st.pending == 0:
            n = common_path_len(st.l, st.r, params)
            if n:
                st.l = prefix_rescale(st.l, n, params)
                st.r = prefix_rescale(st.r, n, params)
                self.window.shift(n)
        if self.ar:
            self._fold_loop()
        top = params.powers[params.N - 1]
        while st.pending == 0 and interval_width(st.l, st.r, params) < self.floor:
            # Mirror of the encoder's narrowing valve; the window value
            # identifies the side the encoder kept.
            boundary = (st.l // top + 1) * top
            if self.window.g < boundary:
                st.r = boundary
            else:
                st.l = boundary
            n = common_path_len(st.l, st.r, params)
            if n:
                st.l = prefix_rescale(st.l, n, params)
                st.r = prefix_rescale(st.r, n, params)
                self.window.shift(n)
            if self.ar:
                self._fold_loop()

    def _fold_loop(self):
        st = self.state
        while straddle_check(st.l, st.r, st.params):
            straddle_fold(st)
            self.window.fold()


def encode(symbols, model, *, ar: bool = True, flush: str = "min"):
    """Encode a symbol sequence; returns the emitted digits as a list."""
    enc = Encoder(model, ar=ar)
    out = []
    for s in symbols:
        out.extend(enc.step(s))
    out.extend(enc.finish(flush=flush))
    return out


def decode(source, model, *, ar: bool = True):
    """Decode a DigitReader or plain digit sequence back into symbols."""
    if isinstance(source, DigitReader):
        reader = source
    else:
        reader = DigitReader.from_digits(model.params, source)
    dec = Decoder(reader, model, ar=ar)
    out = []
    if model.eom is not None:
        while True:
            s = dec.next_symbol()
            if s == model.eom:
                break
            out.append(s)
    else:
        while dec.payload_consumed < reader.declared_count:
            out.append(dec.next_symbol())
    return out
