from .one_way import OneWayResult, optimize_one_way
from .Protocol import (
    LocalInstrument,
    ProtocolNode,
    alternating_protocol,
    kraus_from_povm,
    leaf_labels,
    one_way_protocol,
    product_protocol,
    protocol_depth,
    protocol_from_json,
    protocol_to_json,
    read_protocol,
    weak_trine_instrument,
    write_protocol,
)
from .run import run_protocol
