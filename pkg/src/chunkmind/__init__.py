"""Rule-based dialogue engine: chunked lexicon, bitemporal memory graph,
spatial projection map, sentence transformations, and an utterance pipeline."""

from chunkmind.lexicon import Chunk, ChunkClass, Lexicon, Major, Minor, classify, seed_lexicon, segment
from chunkmind.memory import (
    AttributeRecord,
    CycleError,
    KnowledgeBase,
    MemorySheet,
    SpatialValue,
    StaleTimestamp,
)
from chunkmind.measurement import DistributionModel, eval_quantity, measure_distribution
from chunkmind.spm import Direction, SpatialMap, express_position
from chunkmind.readout import Mode, Readout, read_defining, read_process, read_set
from chunkmind.tasks import (
    TaskSentence,
    TaskType,
    classify_sentence,
    strip_to_description,
    to_search,
    to_verification,
)
from chunkmind.dialogue import DialogueContext, process_utterance
from chunkmind.kbstore import KbBundle, load, save

__version__ = "0.1.0"
