"""
Run configuration: a line-oriented ``key = value`` format.

Blank lines and ``#`` comments are ignored.  An ``[ssp]`` section holds
``z c`` rows of a tabulated sound-speed profile and a ``[density]``
section ``z rho`` rows.  ``preset = <name>`` loads one of the built-in
scenarios first; every other key then overrides it, wherever it appears.
"""

from dataclasses import dataclass, field

import numpy as np

from .environment import ROUGH_SHALLOW_TABLE, DensityProfile, Environment, SoundSpeedProfile
from .errors import ChebPEError, ConfigError
from .pade import MAX_TERMS
from .starter import StarterSpec

ENGINES = ("csm", "fdm", "analytic")

_example1 = """\
freq = 20
depth = 100
source_depth = 36
receiver_depth = 36
c0 = 1500
ssp = isovelocity
ssp_speed = 1500
N = 25
n = 8
delta_r = 5
r_max = 5000
mode = transfer
starter = modal
N_f = 200
engines = csm, analytic
grid = on
grid_dz = 4
"""

_example2 = """\
freq = 50
depth = 5000
source_depth = 1000
receiver_depth = 1000
c0 = 1500
ssp = munk
N = 600
n = 4
delta_r = 20
r_max = 20000
mode = transfer
starter = gaussian
width_scale = 3
N_f = 5000
engines = csm, fdm
grid = off
grid_dz = 50
"""

_example3 = """\
freq = 30
depth = 400
source_depth = 40
receiver_depth = 40
c0 = 1500
ssp = table
N = 100
n = 8
delta_r = 10
r_max = 10000
mode = transfer
starter = gaussian
width_scale = 3
N_f = 400
engines = csm, fdm
grid = on
grid_dz = 4

[ssp]
""" + "".join(f"{z:g} {c:g}\n" for z, c in ROUGH_SHALLOW_TABLE)

PRESETS = {"example1": _example1, "example2": _example2, "example3": _example3}


@dataclass(frozen=True)
class RunConfig:
    env: Environment
    N: int
    n: int
    delta_r: float
    r_max: float
    mode: str = "transfer"
    starter: StarterSpec = field(default_factory=StarterSpec)
    N_f: int = None
    engines: tuple = ("csm",)
    slice_depths: tuple = ()
    grid: bool = False
    grid_dz: float = None
    output_dir: str = "out"
    dump_complex: bool = False

    @property
    def exclusion_radius(self):
        """Near-field cut for comparisons: ten reference wavelengths."""
        return 10.0 * self.env.wavelength

    def grid_depths(self):
        """Interior output depths dz, 2 dz, ... strictly above the bottom."""
        dz = self.grid_dz if self.grid_dz else self.env.depth / 100.0
        count = int(np.floor(self.env.depth / dz + 1e-9))
        z = dz * np.arange(1, count + 1)
        return z[z < self.env.depth - 1e-9 * self.env.depth]


_NUMERIC = {
    "freq": float, "depth": float, "source_depth": float, "c0": float, "ssp_speed": float,
    "atten": float, "N": int, "n": int, "delta_r": float, "r_max": float, "N_f": int,
    "width_scale": float, "grid_dz": float,
}
_TEXT = {"preset", "ssp", "density", "mode", "starter", "max_modes", "engines", "grid",
         "output_dir", "dump_complex", "receiver_depth", "modal_hankel"}
KNOWN_KEYS = set(_NUMERIC) | _TEXT
REQUIRED = ("freq", "depth", "source_depth", "N", "n", "delta_r", "r_max")


def _tokenize(text):
    """Yield ('kv', line, key, value) and ('row', line, section, (a, b)) items."""
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("ssp", "density"):
                raise ConfigError(f"unknown section [{section}]", lineno)
            yield "section", lineno, section, None
            continue
        if section is not None and "=" not in line:
            parts = line.replace(",", " ").split()
            if len(parts) != 2:
                raise ConfigError(f"expected two numbers in [{section}] row", lineno)
            try:
                row = (float(parts[0]), float(parts[1]))
            except ValueError:
                raise ConfigError(f"unparseable number in [{section}] row", lineno) from None
            yield "row", lineno, section, row
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        section = None
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        yield "kv", lineno, key, value


def _collect(text, values, tables, seen):
    for kind, lineno, key, value in _tokenize(text):
        if kind == "section":
            tables[key] = []
        elif kind == "row":
            tables[key].append((lineno, value))
        else:
            values[key] = (lineno, value)
            seen.add(key)


def _bool(value, key, lineno):
    v = value.lower()
    if v in ("on", "true", "yes", "1"):
        return True
    if v in ("off", "false", "no", "0"):
        return False
    raise ConfigError(f"{key} must be on/off, got {value!r}", lineno)


def parse_config(text):
    """Parse and validate configuration text into a RunConfig."""
    user_values, user_tables = {}, {}
    _collect(text, user_values, user_tables, set())
    values, tables = {}, {}
    if "preset" in user_values:
        lineno, name = user_values["preset"]
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r} (choose from {', '.join(PRESETS)})", lineno)
        _collect(PRESETS[name], values, tables, set())
        values = {k: (lineno, v) for k, (_, v) in values.items()}
        tables = {k: [(lineno, r) for _, r in rows] for k, rows in tables.items()}
    values.update(user_values)
    tables.update(user_tables)

    for key in REQUIRED:
        if key not in values:
            raise ConfigError(f"missing required key {key!r}")

    num = {}
    for key, conv in _NUMERIC.items():
        if key in values:
            lineno, raw = values[key]
            try:
                num[key] = conv(raw)
            except ValueError:
                raise ConfigError(f"{key}: cannot parse {raw!r} as {conv.__name__}", lineno) from None

    def line_of(key):
        return values[key][0] if key in values else None

    # sound speed
    ssp_kind = values.get("ssp", (None, "table" if "ssp" in tables else "isovelocity"))[1].lower()
    try:
        if ssp_kind == "isovelocity":
            ssp = SoundSpeedProfile.isovelocity(num.get("ssp_speed", num.get("c0", 1500.0)))
        elif ssp_kind == "munk":
            ssp = SoundSpeedProfile.munk()
        elif ssp_kind == "table":
            rows = tables.get("ssp")
            if not rows:
                raise ConfigError("ssp = table needs an [ssp] section", line_of("ssp"))
            ssp = SoundSpeedProfile.table([r for _, r in rows])
        else:
            raise ConfigError(f"unknown ssp kind {ssp_kind!r}", line_of("ssp"))

        dens_raw = values.get("density", (None, "table" if "density" in tables else "1.0"))[1]
        if dens_raw.lower() == "table":
            rows = tables.get("density")
            if not rows:
                raise ConfigError("density = table needs a [density] section", line_of("density"))
            density = DensityProfile.table([r for _, r in rows])
        else:
            try:
                density = DensityProfile.constant(float(dens_raw))
            except ValueError:
                raise ConfigError(f"density: cannot parse {dens_raw!r}", line_of("density")) from None

        slice_raw = values.get("receiver_depth", (None, ""))[1]
        try:
            slices = tuple(float(s) for s in slice_raw.replace(",", " ").split())
        except ValueError:
            raise ConfigError(f"receiver_depth: cannot parse {slice_raw!r}", line_of("receiver_depth")) from None
        if not slices:
            slices = (num["source_depth"],)

        env = Environment(
            depth=num["depth"], freq=num["freq"], source_depth=num["source_depth"],
            receiver_depth=slices[0], ssp=ssp, density=density,
            atten=num.get("atten", 0.0), c0=num.get("c0", 1500.0),
        )
        for z in slices:
            if not 0 < z < env.depth:
                raise ConfigError(f"receiver depth {z} outside (0, {env.depth})", line_of("receiver_depth"))

        starter_kind = values.get("starter", (None, "modal"))[1].lower()
        mm_raw = values.get("max_modes", (None, "auto"))[1].lower()
        if mm_raw == "auto":
            max_modes = None
        else:
            try:
                max_modes = int(mm_raw)
            except ValueError:
                raise ConfigError(f"max_modes: cannot parse {mm_raw!r}", line_of("max_modes")) from None
        starter = StarterSpec(
            kind=starter_kind, max_modes=max_modes, width_scale=num.get("width_scale", 1.0),
            hankel=values.get("modal_hankel", (None, "farfield"))[1].lower(),
        )
    except ConfigError:
        raise
    except ChebPEError as exc:
        raise ConfigError(str(exc)) from exc

    mode = values.get("mode", (None, "transfer"))[1].lower()
    if mode not in ("split", "transfer"):
        raise ConfigError(f"mode must be split or transfer, got {mode!r}", line_of("mode"))
    engines = tuple(e.strip().lower() for e in values.get("engines", (None, "csm"))[1].split(",") if e.strip())
    if not engines:
        raise ConfigError("engines must be nonempty", line_of("engines"))
    for e in engines:
        if e not in ENGINES:
            raise ConfigError(f"unknown engine {e!r}", line_of("engines"))
    if len(set(engines)) != len(engines):
        raise ConfigError("duplicate engine", line_of("engines"))

    if not num["delta_r"] > 0:
        raise ConfigError("delta_r must be positive", line_of("delta_r"))
    if not num["r_max"] >= num["delta_r"]:
        raise ConfigError("r_max must be >= delta_r", line_of("r_max"))
    if num["N"] < 4:
        raise ConfigError("N must be >= 4", line_of("N"))
    if not 1 <= num["n"] <= MAX_TERMS:
        raise ConfigError(f"n must be in 1..{MAX_TERMS}", line_of("n"))
    N_f = num.get("N_f")
    if "fdm" in engines and N_f is None:
        raise ConfigError("engine fdm needs N_f")
    if N_f is not None and N_f < 2:
        raise ConfigError("N_f must be >= 2", line_of("N_f"))
    if "grid_dz" in num and not num["grid_dz"] > 0:
        raise ConfigError("grid_dz must be positive", line_of("grid_dz"))

    return RunConfig(
        env=env, N=num["N"], n=num["n"], delta_r=num["delta_r"], r_max=num["r_max"],
        mode=mode, starter=starter, N_f=N_f, engines=engines, slice_depths=slices,
        grid=_bool(values["grid"][1], "grid", line_of("grid")) if "grid" in values else False,
        grid_dz=num.get("grid_dz"),
        output_dir=values.get("output_dir", (None, "out"))[1],
        dump_complex=_bool(values["dump_complex"][1], "dump_complex", line_of("dump_complex"))
        if "dump_complex" in values else False,
    )


def preset_config(name, **overrides):
    """RunConfig for a built-in scenario, with ``key=value`` text overrides."""
    lines = [f"preset = {name}"] + [f"{k} = {v}" for k, v in overrides.items()]
    return parse_config("\n".join(lines))
