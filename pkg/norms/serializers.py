"""
Distance report serializers
"""

from rest_framework import serializers


class CbEstimateSerializer(serializers.Serializer):
    """Serializer for one witness-based cb distance estimate"""

    pair = serializers.CharField()
    n = serializers.IntegerField()
    forward_lower = serializers.FloatField()
    inverse_lower = serializers.FloatField()
    product_lower = serializers.FloatField()
    closed_form = serializers.FloatField(allow_null=True)
    witness_description = serializers.CharField()


class DistanceRowSerializer(CbEstimateSerializer):
    """A distance table row"""

    diverges = serializers.BooleanField()


CSV_COLUMNS = ["pair", "n", "forward_lower", "inverse_lower", "product_lower", "closed_form"]
