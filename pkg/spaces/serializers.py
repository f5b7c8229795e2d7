"""
Operator space serializers for build reports
"""

from rest_framework import serializers

from core.serializers import ElementField, MatrixField


class ComponentShapeSerializer(serializers.Serializer):
    """Ambient shape of one block"""

    rows = serializers.IntegerField()
    cols = serializers.IntegerField()
    label = serializers.CharField()
    k = serializers.IntegerField(allow_null=True)


class OperatorBasisSerializer(serializers.Serializer):
    """Serializer for OperatorBasis and IntersectionSpace"""

    name = serializers.CharField()
    n = serializers.IntegerField()
    components = ComponentShapeSerializer(many=True)
    basis = serializers.ListField(child=ElementField())


class GridElementSerializer(serializers.Serializer):
    """One signed matrix unit u_IJ of a grid"""

    I = serializers.ListField(child=serializers.IntegerField())
    J = serializers.ListField(child=serializers.IntegerField())
    sign = serializers.IntegerField()
    matrix = MatrixField()
