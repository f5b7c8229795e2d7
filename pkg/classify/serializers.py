"""
Classification input and report serializers
"""

from rest_framework import serializers

from core.serializers import ElementField


class ClassifyInputSerializer(serializers.Serializer):
    """A family of matrices, or of block tuples given as lists of matrices"""

    family = serializers.ListField(child=ElementField(), min_length=1)

    def validate_family(self, value):
        kinds = {isinstance(u, tuple) for u in value}
        if len(kinds) != 1:
            raise serializers.ValidationError("Mix of matrices and block tuples in one family.")
        return value


class ClassificationReportSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    i_R = serializers.IntegerField()
    i_L = serializers.IntegerField()
    components = serializers.ListField(child=serializers.IntegerField())
    verdict = serializers.CharField()
