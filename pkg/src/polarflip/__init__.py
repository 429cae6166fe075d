"""Polar codes with SCFlip-1 / SCFlip-2 decoding over the BI-AWGN channel."""

from .channel import ChannelParams, RngStream, channel_llr, transmit
from .crc import CRC16_POLY, CrcSpec, crc_append, crc_check
from .exceptions import InvalidParameterError
from .flip import (FlipConfig, FlipList, FlipOutcome, MetricContext, classify_order,
                   flip_determine, metric_score, scflip1, scflip2)
from .polar import (CodeSpec, construct_info_set, encode, extract_payload, insert_payload,
                    load_info_set, save_info_set)
from .sc import DecodeOutcome, DecoderWorkspace, OracleResult, oracle_sc, sc_decode

__version__ = "0.1.0"
