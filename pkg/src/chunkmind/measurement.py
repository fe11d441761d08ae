"""Distribution-band wording and quantity-word evaluation.

A distribution model maps a numeric value onto one of seven symmetric
bands around the expected value (cutoffs at 1, 2 and 3 standard
deviations by default) and picks the band's wording for the space.
"""

from __future__ import annotations

from dataclasses import dataclass


class MeasurementError(Exception):
    pass


class UnknownQuantityWord(MeasurementError):
    pass


DEFAULT_CUTOFFS = (1.0, 2.0, 3.0)

NUMBER_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12,
}


@dataclass
class DistributionModel:
    space: str
    mu: float
    sigma: float
    band_words: dict[int, list[str]]
    cutoffs: tuple[float, float, float] = DEFAULT_CUTOFFS

    def __post_init__(self):
        if self.sigma <= 0:
            raise MeasurementError("sigma must be > 0")
        if list(self.cutoffs) != sorted(self.cutoffs):
            raise MeasurementError("cutoffs must be increasing")
        for band in range(-3, 4):
            if not self.band_words.get(band):
                raise MeasurementError(f"band {band:+d} has no words")

    def band_of(self, value: float) -> int:
        """Signed band index: 0 center, +/-1 mild, +/-2 extreme, +/-3 beyond."""
        z = (value - self.mu) / self.sigma
        mag = abs(z)
        c1, c2, c3 = self.cutoffs
        if mag <= c1:
            return 0
        band = 1 if mag <= c2 else 2 if mag <= c3 else 3
        return band if z > 0 else -band

    def words_for(self, value: float) -> list[str]:
        return list(self.band_words[self.band_of(value)])


def measure_distribution(model: DistributionModel, value: float) -> str:
    """The measurement word for a value (first word of its band)."""
    return model.band_words[model.band_of(value)][0]


def eval_quantity(word: str, qty: int):
    """Evaluate a quantity measurement word against an available quantity.

    "any"/"some" yield a boolean (is anything there); articles and numerals
    yield the demanded integer. Whether a demand is satisfiable is the
    caller's check.
    """
    if qty < 0:
        raise MeasurementError("quantity must be >= 0")
    w = word.lower()
    if w in ("any", "some"):
        return qty > 0
    if w in ("a", "an"):
        return 1
    if w in NUMBER_WORDS:
        return NUMBER_WORDS[w]
    if w.isdigit():
        return int(w)
    raise UnknownQuantityWord(word)


def temperature_model(mu: float = 20.0, sigma: float = 8.0) -> DistributionModel:
    """A ready-made model for the temperature space."""
    return DistributionModel(
        space="temperature",
        mu=mu,
        sigma=sigma,
        band_words={
            3: ["never seen", "beyond the limit"],
            2: ["extremely hot"],
            1: ["hot"],
            0: ["warm", "cool", "proper"],
            -1: ["cold"],
            -2: ["extremely cold"],
            -3: ["never heard", "beyond the cognitive"],
        },
    )
