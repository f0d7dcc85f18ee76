from .partition import (
    PartitionState, Relation, new_partition, apply_result, relation_known, is_complete, groups
)

__all__ = [
    'PartitionState',
    'Relation',
    'new_partition',
    'apply_result',
    'relation_known',
    'is_complete',
    'groups',
]
