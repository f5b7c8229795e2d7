"""
Run configuration serializers shared by the management command and the API
"""

from django.conf import settings
from rest_framework import serializers

from classify.serializers import ClassifyInputSerializer
from core.exceptions import ConfigurationError
from core.serializers import ElementField
from norms.distances import SpaceKey

COMMANDS = ["build", "verify", "distance", "classify"]
SPACES = ["column", "row", "hnk", "phi", "ones", "intersection"]
SUITES = [
    "orthonormal",
    "grid",
    "car",
    "fock",
    "projection",
    "classify",
    "tro",
    "support",
    "distance",
    "all",
]


def parse_pair(value: str, k=None):
    """'Rn:Cn' -> (SpaceKey, SpaceKey)"""
    parts = value.split(":")
    if len(parts) != 2:
        raise serializers.ValidationError("A pair looks like Rn:Cn.")
    try:
        return tuple(SpaceKey.parse(token, k) for token in parts)
    except ConfigurationError as e:
        raise serializers.ValidationError(str(e))


class RunConfigSerializer(serializers.Serializer):
    """One build, verify, distance or classify run"""

    command = serializers.ChoiceField(choices=COMMANDS)
    n = serializers.IntegerField(min_value=1, required=False)
    k = serializers.IntegerField(min_value=1, required=False)
    m = serializers.IntegerField(min_value=0, required=False)
    ks = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False)
    space = serializers.ChoiceField(choices=SPACES, required=False)
    I = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False)
    J = serializers.ListField(child=serializers.IntegerField(min_value=1), required=False)
    suite = serializers.ChoiceField(choices=SUITES, default="all")
    pair = serializers.CharField(required=False)
    n_max = serializers.IntegerField(min_value=1, required=False)
    levels = serializers.IntegerField(min_value=1, required=False)
    samples = serializers.IntegerField(min_value=1, required=False)
    workers = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, required=False)
    structural_tol = serializers.FloatField(required=False)
    iterative_tol = serializers.FloatField(required=False)
    max_iterations = serializers.IntegerField(required=False)
    format = serializers.ChoiceField(choices=["json", "csv"], default="json")
    family = serializers.ListField(child=ElementField(), required=False, min_length=1)

    def validate_family(self, value):
        return ClassifyInputSerializer().validate_family(value)

    def validate_pair(self, value):
        k = self.initial_data.get("k")
        try:
            parse_pair(value, int(k) if k is not None else None)
        except (TypeError, ValueError) as e:
            raise serializers.ValidationError(str(e))
        return value

    def validate(self, attrs):
        command = attrs["command"]
        n = attrs.get("n")
        if command != "classify" and n is None:
            raise serializers.ValidationError({"n": f"The {command} command needs n."})

        if n is not None:
            fock_only = command == "verify" and attrs["suite"] == "car"
            cap = settings.OPSPACE_MAX_N_FOCK if fock_only else settings.OPSPACE_MAX_N_LEVELS
            for field in ("n", "n_max"):
                if attrs.get(field, 0) > cap:
                    raise serializers.ValidationError({field: f"Must be at most {cap} for this command."})
            if "k" in attrs and attrs["k"] > n:
                raise serializers.ValidationError({"k": f"k must lie in 1..{n}."})
            if any(k > n for k in attrs.get("ks", [])):
                raise serializers.ValidationError({"ks": f"Levels must lie in 1..{n}."})
            if "m" in attrs and attrs["m"] + 1 > n:
                raise serializers.ValidationError({"m": f"m must lie in 0..{n - 1}."})
            if attrs.get("n_max") is not None and attrs["n_max"] < n:
                raise serializers.ValidationError({"n_max": "n_max must be at least n."})

        if command == "build":
            space = attrs.get("space")
            if space is None:
                raise serializers.ValidationError({"space": "The build command needs a space."})
            if space in ("hnk", "ones") and "k" not in attrs:
                raise serializers.ValidationError({"k": f"The {space} space needs k."})
            if space == "ones" and ("I" not in attrs or "J" not in attrs):
                raise serializers.ValidationError({"I": "The ones space needs I and J."})
            if space == "intersection" and not attrs.get("ks"):
                raise serializers.ValidationError({"ks": "The intersection space needs levels."})
        if command == "classify" and not attrs.get("family"):
            raise serializers.ValidationError({"family": "The classify command needs a family."})
        if attrs["format"] == "csv" and command != "distance":
            raise serializers.ValidationError({"format": "CSV output is only available for distance tables."})
        return attrs
