from django.urls import path
from . import views

urlpatterns = [
    path("build/", views.build, name="build"),
    path("verify/", views.verify, name="verify"),
    path("distance/", views.distance, name="distance"),
    path("classify/", views.classify, name="classify"),
]
