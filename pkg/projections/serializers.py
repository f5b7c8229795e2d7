"""
Projection report serializers
"""

from rest_framework import serializers


class SupportSpaceSerializer(serializers.Serializer):
    """Summary of a support space and its essentiality verdict"""

    space = serializers.CharField()
    n = serializers.IntegerField()
    rank = serializers.IntegerField()
    essential = serializers.BooleanField()
    range_residual = serializers.FloatField()
