#!/usr/bin/env python3
"""Regenerate the bundled fixture data under src/skate/data/.

Deterministic: vector components derive from a fixed seed plus per-token
hashes, so reruns are byte-identical. Run from the repository root:

    python tools/make_fixtures.py
"""

from __future__ import annotations

import hashlib
import json
import re
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "skate" / "data"

DIM = 50
SEED = 20240907
NOISE = 0.30
FUNCTION_SCALE = 0.05


# ---------------------------------------------------------------------------
# span helper
# ---------------------------------------------------------------------------

def _find(text: str, phrase: str) -> tuple[int, int]:
    occurrence = 0
    if "#" in phrase:
        phrase, num = phrase.rsplit("#", 1)
        occurrence = int(num) - 1
    start = -1
    for _ in range(occurrence + 1):
        start = text.find(phrase, start + 1)
        if start < 0:
            raise SystemExit(f"phrase {phrase!r} not found in {text!r}")
    return (start, start + len(phrase))


def ex(text: str, trigger: str, roles: dict[str, str] | None = None) -> dict:
    return {
        "text": text,
        "trigger": list(_find(text, trigger)),
        "roles": {name: list(_find(text, phrase)) for name, phrase in (roles or {}).items()},
    }


def role(name, kind, type_hint=None, examples=()):
    return {"name": name, "kind": kind, "type_hint": type_hint, "examples": list(examples)}


# ---------------------------------------------------------------------------
# frames
# ---------------------------------------------------------------------------

FRAMES: list[dict] = [
    # roots
    {"id": "entity", "gloss": "Something that exists.", "pos": "n",
     "triggers": ["entity"], "parents": [],
     "roles": [role("focal", "focal")], "examples": []},
    {"id": "event", "gloss": "Something that happens.", "pos": "v",
     "triggers": ["happen", "occur"], "parents": [],
     "roles": [role("focal", "focal")], "examples": []},
    {"id": "attribute", "gloss": "A property of something.", "pos": "a",
     "triggers": ["attribute"], "parents": [],
     "roles": [role("focal", "focal")], "examples": []},

    # --- entities ---
    {"id": "person", "gloss": "A human being.", "pos": "n",
     "triggers": ["person", "child", "boy", "girl", "student", "man", "woman",
                  "kid", "friend", "teacher", "adult", "baby", "neighbor"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("The child smiled at the teacher.", "child")]},
    {"id": "physical-object", "gloss": "A tangible thing.", "pos": "n",
     "triggers": ["object", "thing", "item", "ball", "book", "toy", "rock",
                  "gift", "door", "page", "blanket", "window", "coin"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("The boy threw the ball.", "ball")]},
    {"id": "food", "gloss": "Something to eat.", "pos": "n",
     "triggers": ["food", "cookie", "bread", "cake", "apple", "snack", "meal",
                  "dinner"],
     "parents": ["physical-object"], "roles": [],
     "examples": [ex("The cookie was sweet.", "cookie")]},
    {"id": "container", "gloss": "An object that holds other things.", "pos": "n",
     "triggers": ["jar", "box", "bottle", "basket", "bag", "cup", "bowl"],
     "parents": ["physical-object"], "roles": [],
     "examples": [ex("The jar sat on the shelf.", "jar")]},
    {"id": "animal", "gloss": "A living creature.", "pos": "n",
     "triggers": ["animal", "dog", "cat", "bird", "lion", "bear", "rabbit",
                  "mouse", "horse", "cow"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("The dog barked at the cat.", "dog")]},
    {"id": "place", "gloss": "A location.", "pos": "n",
     "triggers": ["place", "location", "room", "area", "school", "class",
                  "classroom", "playground", "home", "house", "yard", "garden",
                  "kitchen", "park", "library", "office", "store", "town",
                  "station"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("The room near the kitchen was quiet.", "room")]},
    {"id": "goal-area", "gloss": "The target area in a game.", "pos": "n",
     "triggers": ["goal", "field", "court"],
     "parents": ["place"], "roles": [],
     "examples": [ex("The player kicked the ball toward the goal.", "goal")]},
    {"id": "group", "gloss": "A collection of people.", "pos": "n",
     "triggers": ["team", "group", "family", "crowd", "club"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("The team cheered together.", "team")]},
    {"id": "information", "gloss": "A piece of knowledge or news.", "pos": "n",
     "triggers": ["fact", "information", "news", "secret", "story", "answer",
                  "truth", "lesson"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("She shared the news with the class.", "news")]},
    {"id": "symptom", "gloss": "A sign of illness.", "pos": "n",
     "triggers": ["fever", "cough", "headache", "symptom", "chills"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("The student had a fever and a cough.", "fever")]},
    {"id": "illness", "gloss": "A disease.", "pos": "n",
     "triggers": ["illness", "disease", "virus", "flu"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("The virus spread through the town.", "virus")]},
    {"id": "emotion", "gloss": "A feeling.", "pos": "n",
     "triggers": ["fear", "joy", "anger", "sadness", "happiness"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("Joy filled the room.", "Joy")]},
    {"id": "size", "gloss": "How big something is.", "pos": "n",
     "triggers": ["size", "height", "weight", "length"],
     "parents": ["attribute"], "roles": [],
     "examples": [ex("The size of the box surprised her.", "size")]},
    {"id": "tastiness", "gloss": "How good something tastes.", "pos": "a",
     "triggers": ["tasty", "delicious", "sweet"],
     "parents": ["attribute"], "roles": [],
     "examples": [ex("The cake was delicious.", "delicious")]},
    {"id": "game", "gloss": "A structured play activity.", "pos": "n",
     "triggers": ["game", "soccer", "football", "match"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("They enjoyed a game of soccer.", "soccer")]},
    {"id": "score", "gloss": "A unit counted toward winning.", "pos": "n",
     "triggers": ["point", "score"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("The team earned another point.", "point")]},
    {"id": "time-period", "gloss": "A stretch of time.", "pos": "n",
     "triggers": ["day", "week", "hour", "minute", "month"],
     "parents": ["entity"], "roles": [],
     "examples": [ex("They waited for an hour.", "hour")]},

    # --- events ---
    {"id": "motion", "gloss": "Something moves.", "pos": "v",
     "triggers": ["move", "go", "travel", "walk", "run"],
     "parents": ["event"],
     "roles": [role("theme", "required", "entity", ["the boy", "the dog", "the ball"]),
               role("area", "optional", "place", ["around the yard", "through the park"])],
     "examples": [ex("The boy walks through the park.", "walks",
                     {"theme": "The boy", "area": "through the park"})]},
    {"id": "arriving-at-a-location", "gloss": "Someone reaches a destination.",
     "pos": "v",
     "triggers": ["get", "arrive", "reach", "come"],
     "parents": ["motion"],
     "roles": [role("destination", "required", "place",
                    ["to the goal", "to school", "to the park"])],
     "examples": [ex("The player gets to the goal.", "gets",
                     {"theme": "The player", "destination": "to the goal"}),
                  ex("She arrives at school.", "arrives",
                     {"theme": "She", "destination": "at school"})]},
    {"id": "acquire", "gloss": "Someone comes to have something.", "pos": "v",
     "triggers": ["get", "acquire", "obtain", "receive", "earn"],
     "parents": ["event"],
     "roles": [role("recipient", "required", "person",
                    ["the player", "the boy", "the team"]),
               role("theme", "required", "physical-object",
                    ["a ball", "a gift", "a book"]),
               role("source", "optional", None,
                    ["from the store", "from his friend"])],
     "examples": [ex("The player gets a ball.", "gets",
                     {"recipient": "The player", "theme": "a ball"}),
                  ex("He receives a gift from his friend.", "receives",
                     {"recipient": "He", "theme": "a gift",
                      "source": "from his friend"})]},
    {"id": "transition-to-state", "gloss": "Something ends up in a new state.",
     "pos": "v",
     "triggers": ["get", "become", "turn"],
     "parents": ["event"],
     "roles": [role("entity", "required", "entity", ["the boy", "she", "the milk"]),
               role("final_state", "required", None,
                    ["into trouble", "angry", "upset", "cold"])],
     "examples": [ex("He gets into trouble.", "gets",
                     {"entity": "He", "final_state": "into trouble"}),
                  ex("She becomes angry.", "becomes",
                     {"entity": "She", "final_state": "angry"})]},
    {"id": "taking", "gloss": "Someone takes hold of something.", "pos": "v",
     "triggers": ["take", "grab", "snatch"],
     "parents": ["event"],
     "roles": [role("agent", "required", "person",
                    ["the boy", "the girl", "the child"]),
               role("theme", "required", "physical-object",
                    ["the ball", "a book", "the toy"]),
               role("source", "optional", None,
                    ["from the box", "from the shelf", "from the table"])],
     "examples": [ex("The boy takes the ball from the box.", "takes",
                     {"agent": "The boy", "theme": "the ball",
                      "source": "from the box"}),
                  ex("She grabs the toy.", "grabs",
                     {"agent": "She", "theme": "the toy"})]},
    {"id": "escorting", "gloss": "Someone takes someone else along to a place.",
     "pos": "v",
     "triggers": ["take", "bring"],
     "parents": ["taking", "motion"],
     "roles": [role("theme", "required", "person",
                    ["the kids", "his brother", "her friend"]),
               role("destination", "optional", "place",
                    ["to school", "to the park"])],
     "examples": [ex("She takes the kids to school.", "takes",
                     {"agent": "She", "theme": "the kids",
                      "destination": "to school"}),
                  ex("He brings his brother to the park.", "brings",
                     {"agent": "He", "theme": "his brother",
                      "destination": "to the park"})]},
    {"id": "taking-time", "gloss": "An activity lasts some amount of time.",
     "pos": "v",
     "triggers": ["take", "last"],
     "parents": ["event"],
     "roles": [role("activity", "required", None,
                    ["the trip", "the game", "the lesson"]),
               role("duration", "required", "time-period",
                    ["two hours", "a week", "ten minutes"])],
     "examples": [ex("The trip takes two hours.", "takes",
                     {"activity": "The trip", "duration": "two hours"})]},
    {"id": "helping", "gloss": "Someone makes a task easier for someone else.",
     "pos": "v",
     "triggers": ["help", "assist", "aid"],
     "parents": ["event"],
     "roles": [role("helper", "required", "person",
                    ["the teacher", "the nurse", "a friend"]),
               role("beneficiary", "required", "person",
                    ["the student", "her friend", "the child"]),
               role("task", "optional", None,
                    ["with the homework", "with the chores"])],
     "examples": [ex("The teacher helps the student with the homework.", "helps",
                     {"helper": "The teacher", "beneficiary": "the student",
                      "task": "with the homework"})]},
    {"id": "thanking", "gloss": "Someone expresses gratitude.", "pos": "v",
     "triggers": ["thank"],
     "parents": ["event"],
     "roles": [role("speaker", "required", "person", ["the boy", "she"]),
               role("addressee", "required", "person",
                    ["his friend", "the helper"])],
     "examples": [ex("The boy thanks his friend.", "thanks",
                     {"speaker": "The boy", "addressee": "his friend"})]},
    {"id": "quarantining", "gloss": "Someone stays away from others for a period.",
     "pos": "v",
     "triggers": ["quarantine", "isolate"],
     "parents": ["event"],
     "roles": [role("person", "required", "person",
                    ["the student", "the worker"]),
               role("duration", "optional", "time-period",
                    ["for 14 days", "for 5 days", "for a week"]),
               role("population", "optional", "place",
                    ["from school", "from work", "from the office"])],
     "examples": [ex("The student quarantines from school for 14 days.",
                     "quarantines",
                     {"person": "The student", "population": "from school",
                      "duration": "for 14 days"})]},
    {"id": "returning", "gloss": "Someone goes back to a place.", "pos": "v",
     "triggers": ["return"],
     "parents": ["motion"],
     "roles": [role("destination", "optional", "place",
                    ["to school", "to work", "home"])],
     "examples": [ex("The student returns to school.", "returns",
                     {"theme": "The student", "destination": "to school"})]},
    {"id": "covering", "gloss": "Something blocks another thing from view.",
     "pos": "v",
     "triggers": ["cover", "block", "obscure", "hide"],
     "parents": ["event"],
     "roles": [role("blocker", "required", "physical-object",
                    ["the blanket", "a cloth", "the curtain"]),
               role("hidden", "required", "physical-object",
                    ["the toy", "the window", "the ball"])],
     "examples": [ex("The blanket covers the toy.", "covers",
                     {"blocker": "The blanket", "hidden": "the toy"})]},
    {"id": "seeing", "gloss": "Someone perceives something visually.", "pos": "v",
     "triggers": ["see", "watch", "observe", "notice"],
     "parents": ["event"],
     "roles": [role("perceiver", "required", "person",
                    ["the boy", "someone", "the teacher"]),
               role("phenomenon", "required", None,
                    ["the bird", "the window", "the game"])],
     "examples": [ex("The boy sees a bird.", "sees",
                     {"perceiver": "The boy", "phenomenon": "a bird"})]},
    {"id": "knowing", "gloss": "Someone has information.", "pos": "v",
     "triggers": ["know"],
     "parents": ["event"],
     "roles": [role("knower", "required", "person", ["the teacher", "she"]),
               role("known", "required", "information",
                    ["the answer", "a fact", "the secret"])],
     "examples": [ex("The teacher knows the answer.", "knows",
                     {"knower": "The teacher", "known": "the answer"})]},
    {"id": "telling", "gloss": "Someone communicates information.", "pos": "v",
     "triggers": ["tell", "inform"],
     "parents": ["event"],
     "roles": [role("speaker", "required", "person", ["the girl", "he"]),
               role("message", "required", "information",
                    ["the news", "a story", "the secret"]),
               role("addressee", "required", "person",
                    ["to her friend", "to the class"])],
     "examples": [ex("The girl tells the news to her friend.", "tells",
                     {"speaker": "The girl", "message": "the news",
                      "addressee": "to her friend"})]},
    {"id": "learning", "gloss": "Someone comes to know something.", "pos": "v",
     "triggers": ["learn"],
     "parents": ["event"],
     "roles": [role("learner", "required", "person",
                    ["the student", "the child"]),
               role("content", "required", "information",
                    ["the fact", "the lesson", "the truth"])],
     "examples": [ex("The student learns the lesson.", "learns",
                     {"learner": "The student", "content": "the lesson"})]},
    {"id": "approaching", "gloss": "Something moves closer to something else.",
     "pos": "v",
     "triggers": ["approach", "near"],
     "parents": ["motion"],
     "roles": [role("theme", "required", None,
                    ["the dog", "a lion", "the stranger"]),
               role("target", "required", None,
                    ["the cat", "the rabbit", "the door"])],
     "examples": [ex("The dog approaches the cat.", "approaches",
                     {"theme": "The dog", "target": "the cat"})]},
    {"id": "wanting", "gloss": "Someone desires something.", "pos": "v",
     "triggers": ["want", "desire", "wish"],
     "parents": ["event"],
     "roles": [role("experiencer", "required", "person",
                    ["the child", "people", "she"]),
               role("desired", "required", None,
                    ["to eat", "to play", "a toy"])],
     "examples": [ex("The child wants a toy.", "wants",
                     {"experiencer": "The child", "desired": "a toy"})]},
    {"id": "eating", "gloss": "Someone ingests food.", "pos": "v",
     "triggers": ["eat", "consume", "dine"],
     "parents": ["event"],
     "roles": [role("ingestor", "required", "person",
                    ["the boy", "the family", "she"]),
               role("food", "required", "food",
                    ["tasty food", "the cookie", "an apple", "dinner"])],
     "examples": [ex("The boy eats an apple.", "eats",
                     {"ingestor": "The boy", "food": "an apple"})]},
    {"id": "feeling", "gloss": "Someone experiences an emotion.", "pos": "v",
     "triggers": ["feel"],
     "parents": ["event"],
     "roles": [role("experiencer", "required", None,
                    ["the girl", "the animal", "he"]),
               role("sensation", "required", "emotion",
                    ["fear", "joy", "pain", "anger"])],
     "examples": [ex("The girl feels joy.", "feels",
                     {"experiencer": "The girl", "sensation": "joy"})]},
    {"id": "possession", "gloss": "Someone or something has something.",
     "pos": "v",
     "triggers": ["have", "own", "possess"],
     "parents": ["event"],
     "roles": [role("owner", "required", None,
                    ["the man", "a house", "the family"]),
               role("possession", "required", None,
                    ["a yard", "a dog", "many pages"])],
     "examples": [ex("The man owns a dog.", "owns",
                     {"owner": "The man", "possession": "a dog"}),
                  ex("The book has many pages.", "has",
                     {"owner": "The book", "possession": "many pages"})]},
    {"id": "playing", "gloss": "Someone engages in a game or recreation.",
     "pos": "v",
     "triggers": ["play"],
     "parents": ["event"],
     "roles": [role("agent", "required", "person",
                    ["the kids", "the boy", "the team"]),
               role("game", "optional", "game",
                    ["soccer", "a game", "football"])],
     "examples": [ex("The kids play soccer.", "play",
                     {"agent": "The kids", "game": "soccer"})]},
    {"id": "belonging", "gloss": "Someone is a member of a group.", "pos": "v",
     "triggers": ["belong"],
     "parents": ["event"],
     "roles": [role("member", "required", None, ["the player", "the book", "she"]),
               role("group", "required", "group",
                    ["to a team", "to the library", "to the club"])],
     "examples": [ex("The player belongs to a team.", "belongs",
                     {"member": "The player", "group": "to a team"})]},
    {"id": "moving", "gloss": "Someone moves something to a place.", "pos": "v",
     "triggers": ["move", "push", "kick", "carry"],
     "parents": ["event"],
     "roles": [role("agent", "required", "person", ["the player", "the boy"]),
               role("theme", "required", "physical-object",
                    ["the ball", "the box"]),
               role("destination", "optional", "place",
                    ["to the goal", "across the room"])],
     "examples": [ex("The player moves the ball to the goal.", "moves",
                     {"agent": "The player", "theme": "the ball",
                      "destination": "to the goal"})]},
    {"id": "co-location", "gloss": "Two people are in the same place.",
     "pos": "v",
     "triggers": ["in class", "in the same room", "meet"],
     "parents": ["event"],
     "roles": [role("person", "required", "person",
                    ["Mary", "the student", "Bobby"]),
               role("companion", "optional", "person",
                    ["with Bobby", "with a friend", "with her classmate"])],
     "examples": [ex("Mary was in class with Bobby.", "in class",
                     {"person": "Mary", "companion": "with Bobby"}),
                  ex("Anna was in the same room with her brother.",
                     "in the same room",
                     {"person": "Anna", "companion": "with her brother"})]},
    {"id": "contact", "gloss": "Two people came into contact.", "pos": "v",
     "triggers": ["contact", "touch"],
     "parents": ["event"],
     "roles": [role("person", "required", "person", ["Mary", "the nurse"]),
               role("other", "optional", "person",
                    ["with Bobby", "with the patient"])],
     "examples": [ex("The nurse had contact with the patient.", "contact",
                     {"person": "The nurse", "other": "with the patient"})]},
    {"id": "symptomatic", "gloss": "Someone shows signs of illness.", "pos": "v",
     "triggers": ["symptomatic", "feverish", "sick", "ill"],
     "parents": ["event"],
     "roles": [role("person", "required", "person",
                    ["the student", "Bobby", "the worker"]),
               role("symptom", "optional", "symptom",
                    ["with a fever", "with a cough"])],
     "examples": [ex("The student was symptomatic with a fever.", "symptomatic",
                     {"person": "The student", "symptom": "with a fever"})]},
    {"id": "exposed", "gloss": "Someone was exposed to an infection source.",
     "pos": "v",
     "triggers": ["expose"],
     "parents": ["event"],
     "roles": [role("person", "required", "person", ["the student", "Mary"]),
               role("source", "optional", None,
                    ["to the virus", "to a sick classmate"])],
     "examples": [ex("Mary was exposed to the virus.", "exposed",
                     {"person": "Mary", "source": "to the virus"})]},
    {"id": "testing", "gloss": "Someone takes a medical test.", "pos": "v",
     "triggers": ["test"],
     "parents": ["event"],
     "roles": [role("person", "required", "person",
                    ["the student", "the patient"]),
               role("result", "optional", None, ["negative", "positive"])],
     "examples": [ex("The patient tests negative.", "tests",
                     {"person": "The patient", "result": "negative"})]},
    {"id": "wearing", "gloss": "Someone has something on their body.", "pos": "v",
     "triggers": ["wear"],
     "parents": ["event"],
     "roles": [role("wearer", "required", "person", ["the nurse", "the student"]),
               role("clothing", "required", "physical-object",
                    ["a mask", "a coat"])],
     "examples": [ex("The nurse wears a mask.", "wears",
                     {"wearer": "The nurse", "clothing": "a mask"})]},
    {"id": "attending", "gloss": "Someone is present at an event or place.",
     "pos": "v",
     "triggers": ["attend"],
     "parents": ["event"],
     "roles": [role("attendee", "required", "person", ["the student", "she"]),
               role("occasion", "required", None,
                    ["the class", "school", "the party"])],
     "examples": [ex("The student attends the class.", "attends",
                     {"attendee": "The student", "occasion": "the class"})]},
    {"id": "greater-than", "gloss": "One quantity exceeds another.", "pos": "a",
     "triggers": ["greater", "greater than", "exceed"],
     "parents": ["attribute"],
     "roles": [role("left", "required", None,
                    ["the size", "the number", "the amount"]),
               role("right", "required", None,
                    ["the size", "the number", "the amount"])],
     "examples": [ex("The size of the box is greater than the size of the cup.",
                     "greater than",
                     {"left": "The size of the box",
                      "right": "the size of the cup"})]},
    {"id": "less-than", "gloss": "One quantity falls below another.", "pos": "a",
     "triggers": ["less", "less than", "smaller"],
     "parents": ["attribute"],
     "roles": [role("left", "required", None,
                    ["the size", "the number", "the amount"]),
               role("right", "required", None,
                    ["the size", "the number", "the amount"])],
     "examples": [ex("The weight of the bag is less than the weight of the box.",
                     "less than",
                     {"left": "The weight of the bag",
                      "right": "the weight of the box"})]},
    {"id": "equal-to", "gloss": "Two quantities are the same.", "pos": "v",
     "triggers": ["equal", "equal to"],
     "parents": ["attribute"],
     "roles": [role("left", "required", None,
                    ["the size", "the number", "the amount"]),
               role("right", "required", None,
                    ["the size", "the number", "the amount"])],
     "examples": [ex("The length of the path equals the height of the tree.",
                     "equals",
                     {"left": "The length of the path",
                      "right": "the height of the tree"})]},
    {"id": "giving", "gloss": "Someone transfers something to someone.",
     "pos": "v",
     "triggers": ["give", "donate", "hand"],
     "parents": ["event"],
     "roles": [role("donor", "required", "person", ["the teacher", "grandma"]),
               role("theme", "required", "physical-object",
                    ["a gift", "the book", "a cookie"]),
               role("recipient", "required", "person",
                    ["to the student", "to the child"])],
     "examples": [ex("The teacher gives a book to the student.", "gives",
                     {"donor": "The teacher", "theme": "a book",
                      "recipient": "to the student"})]},
    {"id": "buying", "gloss": "Someone purchases something.", "pos": "v",
     "triggers": ["buy", "purchase"],
     "parents": ["event"],
     "roles": [role("buyer", "required", "person", ["the woman", "dad"]),
               role("goods", "required", "physical-object",
                    ["a toy", "bread", "the tickets"])],
     "examples": [ex("The woman buys bread.", "buys",
                     {"buyer": "The woman", "goods": "bread"})]},
    {"id": "liking", "gloss": "Someone takes pleasure in something.", "pos": "v",
     "triggers": ["like", "love", "enjoy"],
     "parents": ["event"],
     "roles": [role("experiencer", "required", "person",
                    ["the girl", "everyone"]),
               role("content", "required", None,
                    ["the story", "the game", "the cake"])],
     "examples": [ex("The girl likes the story.", "likes",
                     {"experiencer": "The girl", "content": "the story"})]},
    {"id": "crying", "gloss": "Someone sheds tears.", "pos": "v",
     "triggers": ["cry", "weep"],
     "parents": ["event"],
     "roles": [role("crier", "required", "person", ["the baby", "the girl"])],
     "examples": [ex("The baby cries.", "cries", {"crier": "The baby"})]},
    {"id": "laughing", "gloss": "Someone laughs.", "pos": "v",
     "triggers": ["laugh", "giggle"],
     "parents": ["event"],
     "roles": [role("laugher", "required", "person", ["the kids", "the crowd"])],
     "examples": [ex("The kids laugh.", "laugh", {"laugher": "The kids"})]},
    {"id": "sleeping", "gloss": "Someone sleeps.", "pos": "v",
     "triggers": ["sleep", "nap"],
     "parents": ["event"],
     "roles": [role("sleeper", "required", None, ["the cat", "the baby"])],
     "examples": [ex("The cat sleeps in the basket.", "sleeps",
                     {"sleeper": "The cat"})]},
    {"id": "winning", "gloss": "Someone wins a competition.", "pos": "v",
     "triggers": ["win"],
     "parents": ["event"],
     "roles": [role("competitor", "required", None, ["the team", "the girl"]),
               role("prize", "optional", None,
                    ["the game", "the match", "a medal"])],
     "examples": [ex("The team wins the game.", "wins",
                     {"competitor": "The team", "prize": "the game"})]},
    {"id": "finding", "gloss": "Someone discovers something.", "pos": "v",
     "triggers": ["find", "discover"],
     "parents": ["event"],
     "roles": [role("finder", "required", "person", ["the boy", "she"]),
               role("found", "required", "physical-object",
                    ["the keys", "a coin", "the toy"])],
     "examples": [ex("The boy finds a coin.", "finds",
                     {"finder": "The boy", "found": "a coin"})]},
    {"id": "making", "gloss": "Someone creates something.", "pos": "v",
     "triggers": ["make", "build", "bake"],
     "parents": ["event"],
     "roles": [role("maker", "required", "person", ["grandma", "the kids"]),
               role("product", "required", "physical-object",
                    ["a cake", "a house", "a kite"])],
     "examples": [ex("Grandma bakes a cake.", "bakes",
                     {"maker": "Grandma", "product": "a cake"})]},
    {"id": "opening", "gloss": "Someone opens something.", "pos": "v",
     "triggers": ["open"],
     "parents": ["event"],
     "roles": [role("agent", "required", "person", ["she", "the boy"]),
               role("item", "required", "physical-object",
                    ["the door", "the jar", "the box"])],
     "examples": [ex("She opens the jar.", "opens",
                     {"agent": "She", "item": "the jar"})]},
    {"id": "reading", "gloss": "Someone reads text.", "pos": "v",
     "triggers": ["read"],
     "parents": ["event"],
     "roles": [role("reader", "required", "person", ["the child", "he"]),
               role("material", "required", "information",
                    ["the book", "a story", "the letter"])],
     "examples": [ex("The child reads a story.", "reads",
                     {"reader": "The child", "material": "a story"})]},
    {"id": "falling", "gloss": "Something drops downward.", "pos": "v",
     "triggers": ["fall", "drop"],
     "parents": ["motion"],
     "roles": [role("source", "optional", None,
                    ["from the tree", "from the roof"])],
     "examples": [ex("The apple falls from the tree.", "falls",
                     {"theme": "The apple", "source": "from the tree"})]},
]


# ---------------------------------------------------------------------------
# stopwords
# ---------------------------------------------------------------------------

STOPWORDS = """\
a an the this that these those
to of in on at from with by for into onto over under about after before
during through against between behind near without within upon across
around toward towards off out up down beside along
and or but nor
if then when while although though since unless until whether because so
as than
is are was were be been being am
do does did done doing
have has had having
will would can could shall should may might must
not no never none
it its there here
what which who whom whose why how where
all any some each every either neither both few many much
very too also just only even still yet again once often another other
oh yes please
don't doesn't didn't isn't aren't wasn't weren't cannot can't won't
""".split()


# ---------------------------------------------------------------------------
# evaluation corpus (hand-annotated gold)
# ---------------------------------------------------------------------------

EVAL_SENTENCES: list[tuple[str, str, str, dict[str, str]]] = [
    ("helping", "The teacher helps the student with the homework.", "helps",
     {"helper": "The teacher", "beneficiary": "the student", "task": "with the homework"}),
    ("thanking", "The boy thanks his friend.", "thanks",
     {"speaker": "The boy", "addressee": "his friend"}),
    ("quarantining", "The student quarantines from school for 14 days.", "quarantines",
     {"person": "The student", "population": "from school", "duration": "for 14 days"}),
    ("returning", "The student returns to school.", "returns",
     {"theme": "The student", "destination": "to school"}),
    ("covering", "The blanket covers the toy.", "covers",
     {"blocker": "The blanket", "hidden": "the toy"}),
    ("seeing", "The girl sees a bird.", "sees",
     {"perceiver": "The girl", "phenomenon": "a bird"}),
    ("knowing", "The teacher knows the answer.", "knows",
     {"knower": "The teacher", "known": "the answer"}),
    ("telling", "The girl tells the news to her friend.", "tells",
     {"speaker": "The girl", "message": "the news", "addressee": "to her friend"}),
    ("learning", "The student learns the lesson.", "learns",
     {"learner": "The student", "content": "the lesson"}),
    ("approaching", "The dog approaches the cat.", "approaches",
     {"theme": "The dog", "target": "the cat"}),
    ("wanting", "The child wants a toy.", "wants",
     {"experiencer": "The child", "desired": "a toy"}),
    ("eating", "The boy eats an apple.", "eats",
     {"ingestor": "The boy", "food": "an apple"}),
    ("feeling", "The girl feels joy.", "feels",
     {"experiencer": "The girl", "sensation": "joy"}),
    ("possession", "The house has a yard.", "has",
     {"owner": "The house", "possession": "a yard"}),
    ("playing", "The kids play soccer.", "play",
     {"agent": "The kids", "game": "soccer"}),
    ("belonging", "The player belongs to a team.", "belongs",
     {"member": "The player", "group": "to a team"}),
    ("moving", "The player moves the ball to the goal.", "moves",
     {"agent": "The player", "theme": "the ball", "destination": "to the goal"}),
    ("co-location", "Mary was in class with Bobby.", "in class",
     {"person": "Mary", "companion": "with Bobby"}),
    ("symptomatic", "The student was symptomatic with a fever.", "symptomatic",
     {"person": "The student", "symptom": "with a fever"}),
    ("exposed", "Mary was exposed to the virus.", "exposed",
     {"person": "Mary", "source": "to the virus"}),
    ("testing", "The patient tests negative.", "tests",
     {"person": "The patient", "result": "negative"}),
    ("wearing", "The nurse wears a mask.", "wears",
     {"wearer": "The nurse", "clothing": "a mask"}),
    ("attending", "The student attends the class.", "attends",
     {"attendee": "The student", "occasion": "the class"}),
    ("giving", "The teacher gives a book to the student.", "gives",
     {"donor": "The teacher", "theme": "a book", "recipient": "to the student"}),
    ("buying", "The woman buys bread.", "buys",
     {"buyer": "The woman", "goods": "bread"}),
    ("liking", "The girl likes the story.", "likes",
     {"experiencer": "The girl", "content": "the story"}),
    ("crying", "The baby cries.", "cries", {"crier": "The baby"}),
    ("laughing", "The kids laugh.", "laugh", {"laugher": "The kids"}),
    ("sleeping", "The cat sleeps in the basket.", "sleeps",
     {"sleeper": "The cat"}),
    ("winning", "The team wins the game.", "wins",
     {"competitor": "The team", "prize": "the game"}),
    ("finding", "The boy finds a coin.", "finds",
     {"finder": "The boy", "found": "a coin"}),
    ("making", "Grandma bakes a cake.", "bakes",
     {"maker": "Grandma", "product": "a cake"}),
    ("opening", "She opens the jar.", "opens",
     {"agent": "She", "item": "the jar"}),
    ("reading", "The child reads a story.", "reads",
     {"reader": "The child", "material": "a story"}),
    ("falling", "The apple falls from the tree.", "falls",
     {"theme": "The apple", "source": "from the tree"}),
    ("arriving-at-a-location", "The player gets to the goal.", "gets",
     {"theme": "The player", "destination": "to the goal"}),
    ("arriving-at-a-location", "She arrives at school.", "arrives",
     {"theme": "She", "destination": "at school"}),
    ("arriving-at-a-location", "The bus reaches the station.", "reaches",
     {"theme": "The bus", "destination": "the station"}),
    ("acquire", "The boy gets a gift from his friend.", "gets",
     {"recipient": "The boy", "theme": "a gift", "source": "from his friend"}),
    ("acquire", "The team earns a point.", "earns",
     {"recipient": "The team", "theme": "a point"}),
    ("acquire", "A player gets a ball.", "gets",
     {"recipient": "A player", "theme": "a ball"}),
    ("transition-to-state", "She becomes angry.", "becomes",
     {"entity": "She", "final_state": "angry"}),
    ("transition-to-state", "The boy gets into trouble.", "gets",
     {"entity": "The boy", "final_state": "into trouble"}),
    ("taking", "The child takes the cookie from the jar.", "takes",
     {"agent": "The child", "theme": "the cookie", "source": "from the jar"}),
    ("taking", "The boy grabs a book from the shelf.", "grabs",
     {"agent": "The boy", "theme": "a book", "source": "from the shelf"}),
    ("escorting", "She takes the kids to the park.", "takes",
     {"agent": "She", "theme": "the kids", "destination": "to the park"}),
    ("taking-time", "The trip takes two hours.", "takes",
     {"activity": "The trip", "duration": "two hours"}),
    ("motion", "The boy walks through the park.", "walks",
     {"theme": "The boy", "area": "through the park"}),
    ("co-location", "The students meet in the library.", "meet",
     {"person": "The students"}),
    ("symptomatic", "Bobby was feverish.", "feverish", {"person": "Bobby"}),
    ("quarantining", "The worker isolates from work for 5 days.", "isolates",
     {"person": "The worker", "population": "from work", "duration": "for 5 days"}),
    ("greater-than", "The size of the box is greater than the size of the jar.",
     "greater than",
     {"left": "The size of the box", "right": "the size of the jar"}),
    ("less-than", "The height of the chair is less than the height of the table.",
     "less than",
     {"left": "The height of the chair", "right": "the height of the table"}),
    ("equal-to", "The weight of the bag equals the weight of the basket.", "equals",
     {"left": "The weight of the bag", "right": "the weight of the basket"}),
    ("knowing", "The stranger does not know the secret.", "know",
     {"knower": "The stranger", "known": "the secret"}),
    ("telling", "He tells a story to the class.", "tells",
     {"speaker": "He", "message": "a story", "addressee": "to the class"}),
    ("wanting", "People want to eat tasty food.", "want",
     {"experiencer": "People", "desired": "to eat tasty food"}),
    ("helping", "A friend assists the patient.", "assists",
     {"helper": "A friend", "beneficiary": "the patient"}),
    ("eating", "The family dines at the restaurant.", "dines",
     {"ingestor": "The family"}),
    ("seeing", "Someone watches the game.", "watches",
     {"perceiver": "Someone", "phenomenon": "the game"}),
]


# ---------------------------------------------------------------------------
# suggestion corpus
# ---------------------------------------------------------------------------

CORPUS_LINES = [
    "a player gets to the goal",
    "a player gets a ball",
    "a player gets into trouble",
    "the team wins the game",
    "the team earns a point",
    "the boy kicks the ball across the field",
    "the player moves the ball to the goal",
    "the kids play soccer in the park",
    "the girl helps her friend with the homework",
    "the boy thanks his friend",
    "the child takes the cookie from the jar",
    "the child eats a cookie after dinner",
    "the boy eats an apple",
    "people want to eat tasty food",
    "the family dines together",
    "grandma bakes a cake for the party",
    "the woman buys bread at the store",
    "the teacher gives a book to the student",
    "the student learns the lesson",
    "the teacher knows the answer",
    "the girl tells the news to her friend",
    "the student reads a story",
    "the boy finds a coin in the garden",
    "the dog runs in the park",
    "the dog approaches the cat",
    "the cat sleeps in the basket",
    "the baby cries at night",
    "the kids laugh at the story",
    "the girl feels joy",
    "the boy gets a gift from his friend",
    "she becomes angry",
    "the milk turns cold",
    "the boy walks through the park",
    "she arrives at school in the morning",
    "the bus reaches the station",
    "the student returns to school",
    "the apple falls from the tree",
    "the blanket covers the toy",
    "a cloth hides the window",
    "the boy sees a bird",
    "someone watches the game",
    "the player belongs to a team",
    "the house has a yard",
    "the book has many pages",
    "the man owns a dog",
    "she opens the jar",
    "the trip takes two hours",
    "the lesson takes ten minutes",
    "she takes the kids to school",
    "he brings his brother to the park",
    "the student attends the class",
    "the nurse wears a mask",
    "the student quarantines from school for 14 days",
    "the worker isolates from work for 5 days",
    "the patient tests negative",
    "mary was in class with bobby",
    "the students meet in the library",
    "the nurse had contact with the patient",
    "bobby was feverish",
    "mary was exposed to the virus",
    "the student was symptomatic with a fever",
    "the child wants a toy",
    "she wishes to travel",
    "the girl likes the story",
    "everyone enjoys the game",
    "the stranger does not know the secret",
    "he tells a story to the class",
    "the size of the box is greater than the size of the cup",
    "the weight of the bag is less than the weight of the box",
    "the length of the path equals the height of the tree",
    "the team plays football after school",
    "the crowd cheers for the team",
    "the girl writes a letter",
    "he asks a question",
    "the sun rises over the hill",
    "rain falls on the garden",
    "the flowers grow in the garden",
    "the children sing a song",
    "the boy draws a picture",
    "the family travels to the city",
]


# ---------------------------------------------------------------------------
# vector clusters
# ---------------------------------------------------------------------------

CLUSTERS: dict[str, list[str]] = {
    "person": """person child children boy boys girl girls student students man
        woman kid kids friend friends teacher adult baby neighbor nurse doctor
        brother sister mom dad grandma grandpa classmate stranger worker helper
        she he they her him his we us i you my your our their everyone someone
        somebody anyone person1 person2 mary bobby anna grandmother people""",
    "object": """object objects thing things item items book books toy toys rock
        gift gifts door page pages blanket cloth curtain window windows keys key
        coin kite ticket tickets letter something balloon chair table bed
        picture drum stone object1 object2""",
    "food": """food cookie cookies bread cake apple apples snack meal dinner
        breakfast lunch fruit milk candy tasty delicious sweet hungry eat eats
        ate eaten eating consume dine dines dined restaurant""",
    "container": """jar jars box boxes bottle basket bag cup bowl shelf""",
    "animal": """animal animals dog dogs cat cats bird birds lion bear rabbit
        mouse mice puppy kitten horse cow sheep bark barked barks animal1
        animal2""",
    "place": """place places location room rooms area school classroom
        playground home house houses yard garden kitchen park library club
        office store street town city field court station gym hill class""",
    "sports": """soccer football game games match win wins won winning point
        points score medal kick kicks kicked prize race play plays played
        playing cheer cheers cheered""",
    "motion": """move moves moved moving go going travel travels traveled walk
        walks walked walking run runs running arrive arrives arrived arriving
        reach reaches reached come comes coming came return returns returned
        returning fall falls fell falling fallen fly flying flew ride rides
        rode riding approach approaches approached approaching near trip
        journey path drop dropped drops rise rises rose bus car push pushes
        pushed throw throws threw thrown""",
    "transfer": """get gets got gotten getting take takes took taken taking grab
        grabs grabbed snatch bring brings brought give gives given gave giving
        donate hand handed buy buys bought buying purchase sell sells sold send
        sends sent receive receives received obtain obtains obtained acquire
        acquires earn earns earned keep keeps kept hold holds held carry
        carries carried""",
    "state": """become becomes became becoming turn turns turned trouble angry
        upset cold sour tired change changed grow grows grew state""",
    "social": """help helps helped helping assist assists assisted aid thank
        thanks thanked thanking meet meets met together contact touch visit
        visits greet greeted share shares shared hug smile smiles smiled attend
        attends attended party""",
    "cognition": """know knows knew known learn learns learned learning think
        thinks thought understand understands remember forget fact facts
        information news secret secrets story stories answer answers truth idea
        lesson lessons homework study studied wonder question""",
    "communication": """tell tells told telling inform informs say says said
        speak speaks spoke talk talks talked write writes wrote writing read
        reads reading ask asks asked call calls called sing sings sang song
        shout draw draws drew""",
    "perception": """see sees saw seen watch watches watched observe observes
        observed notice notices noticed look looks looked hear hears heard
        listen cover covers covered covering block blocks blocked obscure
        obscures obscured hide hides hid hidden appear appears light find
        finds found discover discovered""",
    "emotion": """feel feels felt feeling fear joy anger sadness happiness happy
        sad afraid scared love loves loved like likes liked enjoy enjoys
        enjoyed cry cries cried crying laugh laughs laughed laughing giggle
        weep fun excited proud pain""",
    "health": """fever cough coughs headache symptom symptoms chills illness
        disease virus flu sick ill feverish symptomatic quarantine quarantines
        quarantined quarantining isolate isolates isolated expose exposes
        exposed test tests tested testing positive negative medicine healthy
        hospital clinic vaccine temperature patient""",
    "size": """size sizes height weight length big small large little tall short
        long heavy greater less smaller larger bigger exceed exceeds equal
        equals same number amount more most half double""",
    "desire": """want wants wanted desire desires wish wishes wished hope hopes
        need needs""",
    "possess": """have has had having own owns owned possess belong belongs
        belonged""",
    "time": """day days week weeks hour hours minute minutes month months time
        today tomorrow yesterday morning night evening afternoon year two ten
        fourteen five 14 5 2 10""",
    "group": """group groups family families crowd community team teams""",
    "creation": """make makes made making build builds built bake bakes baked
        create created cook cooks cooked""",
    "manipulation": """open opens opened close closes closed shut lock locked
        wear wears wore worn coat hat shoes dress clothes mask""",
    "sleep": """sleep sleeps slept sleeping nap asleep bed rest""",
    "nature": """tree trees flower flowers sun moon rain snow water grass sky
        river roof""",
    "misc": """attribute quality quiet loud clean dirty new old nice good bad
        pretty beautiful event entity happen happens happened occur occurs
        question last lasts lasted wait waited waits surprised filled fills
        spread sat chores""",
}

# Tokens living in more than one cluster, with weights.
MULTI_CLUSTER: dict[str, list[tuple[str, float]]] = {
    "get": [("transfer", 0.5), ("motion", 0.33), ("state", 0.33)],
    "gets": [("transfer", 0.5), ("motion", 0.33), ("state", 0.33)],
    "got": [("transfer", 0.5), ("motion", 0.33), ("state", 0.33)],
    "getting": [("transfer", 0.5), ("motion", 0.33), ("state", 0.33)],
    "ball": [("object", 0.7), ("sports", 0.5)],
    "balls": [("object", 0.7), ("sports", 0.5)],
    "goal": [("place", 0.6), ("sports", 0.6)],
    "player": [("person", 0.7), ("sports", 0.5)],
    "players": [("person", 0.7), ("sports", 0.5)],
    "team": [("group", 0.5), ("sports", 0.7)],
    "teams": [("group", 0.5), ("sports", 0.7)],
    "mask": [("object", 0.6), ("manipulation", 0.3), ("health", 0.5)],
    "patient": [("person", 0.6), ("health", 0.6)],
    "doctor": [("person", 0.7), ("health", 0.5)],
    "nurse": [("person", 0.7), ("health", 0.5)],
    "restaurant": [("place", 0.7), ("food", 0.5)],
    "bus": [("object", 0.6), ("motion", 0.5)],
    "car": [("object", 0.6), ("motion", 0.5)],
    "book": [("object", 0.8), ("cognition", 0.3)],
    "books": [("object", 0.8), ("cognition", 0.3)],
    "letter": [("object", 0.6), ("communication", 0.4)],
    "cookie": [("food", 0.8), ("object", 0.4)],
    "cookies": [("food", 0.8), ("object", 0.4)],
    "bread": [("food", 0.8), ("object", 0.4)],
    "cake": [("food", 0.8), ("object", 0.4)],
    "apple": [("food", 0.8), ("object", 0.4), ("nature", 0.2)],
    "apples": [("food", 0.8), ("object", 0.4), ("nature", 0.2)],
    "meal": [("food", 0.9), ("object", 0.2)],
    "dinner": [("food", 0.9), ("object", 0.2)],
    "snack": [("food", 0.9), ("object", 0.2)],
    "jar": [("container", 0.8), ("object", 0.4)],
    "jars": [("container", 0.8), ("object", 0.4)],
    "box": [("container", 0.8), ("object", 0.4)],
    "boxes": [("container", 0.8), ("object", 0.4)],
    "bottle": [("container", 0.8), ("object", 0.4)],
    "basket": [("container", 0.8), ("object", 0.4)],
    "bag": [("container", 0.8), ("object", 0.4)],
    "cup": [("container", 0.8), ("object", 0.4)],
    "bowl": [("container", 0.8), ("object", 0.4)],
    "shelf": [("container", 0.7), ("object", 0.4)],
    "school": [("place", 0.9), ("cognition", 0.2)],
    "class": [("place", 0.8), ("cognition", 0.3)],
    "classroom": [("place", 0.9), ("cognition", 0.2)],
    "library": [("place", 0.8), ("cognition", 0.3)],
    "student": [("person", 0.8), ("cognition", 0.3)],
    "students": [("person", 0.8), ("cognition", 0.3)],
    "teacher": [("person", 0.8), ("cognition", 0.3)],
    "game": [("sports", 0.8), ("object", 0.2)],
    "games": [("sports", 0.8), ("object", 0.2)],
    "toy": [("object", 0.8), ("sports", 0.2)],
    "toys": [("object", 0.8), ("sports", 0.2)],
    "trouble": [("state", 0.9), ("emotion", 0.3)],
    "angry": [("state", 0.5), ("emotion", 0.8)],
    "afraid": [("state", 0.3), ("emotion", 0.8)],
    "sick": [("health", 0.8), ("state", 0.4)],
    "ill": [("health", 0.8), ("state", 0.4)],
    "fear": [("emotion", 0.9), ("state", 0.2)],
    "point": [("sports", 0.7), ("object", 0.2)],
    "points": [("sports", 0.7), ("object", 0.2)],
    "home": [("place", 0.9)],
    "work": [("place", 0.7), ("misc", 0.3)],
    "morning": [("time", 0.9)],
    "weight": [("size", 0.9)],
    "last": [("time", 0.5), ("misc", 0.4)],
    "lasts": [("time", 0.5), ("misc", 0.4)],
    "story": [("cognition", 0.7), ("communication", 0.4)],
    "stories": [("cognition", 0.7), ("communication", 0.4)],
}

FUNCTION_TOKENS = set(STOPWORDS) - {"often"}
FUNCTION_TOKENS.update({"often", "s", "t"})
# possession auxiliaries keep content-scale vectors despite stopword status
CONTENT_DESPITE_STOPWORD = {"have", "has", "had"}

EXTRA_TOKENS = ["object1", "object2", "question", "wait", "waited",
                "surprised", "filled", "spread", "sat", "quiet"]


def _token_noise(token: str, dim: int) -> np.ndarray:
    digest = hashlib.sha256(f"noise:{token}".encode()).digest()
    seed = int.from_bytes(digest[:8], "big") % (2**32)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def collect_vocab() -> set[str]:
    word_re = re.compile(r"[a-z0-9]+(?:'[a-z]+)*")

    def words(text: str) -> set[str]:
        return set(word_re.findall(text.lower()))

    vocab: set[str] = set()
    for frame in FRAMES:
        for trig in frame["triggers"]:
            vocab |= words(trig)
        for r in frame["roles"]:
            for filler in r["examples"]:
                vocab |= words(filler)
        for example in frame["examples"]:
            vocab |= words(example["text"])
    for _frame, text, _trig, roles in EVAL_SENTENCES:
        vocab |= words(text)
        for phrase in roles.values():
            vocab |= words(phrase)
    for line in CORPUS_LINES:
        vocab |= words(line)
    vocab.update(EXTRA_TOKENS)
    vocab.update(w for w in STOPWORDS)
    vocab.update(["animal1", "animal2", "person1", "person2", "object1",
                  "object2", "fourteen"])
    return vocab


def make_vectors() -> str:
    rng = np.random.default_rng(SEED)
    names = sorted(CLUSTERS)
    raw = rng.standard_normal((DIM, len(names)))
    q, _ = np.linalg.qr(raw)
    bases = {name: q[:, i] for i, name in enumerate(names)}

    membership: dict[str, list[tuple[str, float]]] = {}
    for cluster, blob in CLUSTERS.items():
        for token in blob.split():
            token = token.rstrip("?")
            if not token:
                continue
            membership.setdefault(token, [(cluster, 1.0)])
    for token, mix in MULTI_CLUSTER.items():
        membership[token] = mix

    vocab = collect_vocab()
    missing = sorted(
        t for t in vocab
        if t not in membership and t not in FUNCTION_TOKENS
    )
    if missing:
        print(f"note: {len(missing)} tokens assigned to misc cluster: {missing}",
              file=sys.stderr)
        for t in missing:
            membership.setdefault(t, [("misc", 1.0)])

    lines = []
    for token in sorted(vocab):
        if token in FUNCTION_TOKENS and token not in CONTENT_DESPITE_STOPWORD:
            vec = _token_noise(token, DIM) * FUNCTION_SCALE
        else:
            mix = membership.get(token, [("misc", 1.0)])
            base = np.zeros(DIM)
            for cluster, weight in mix:
                base = base + weight * bases[cluster]
            base = base / np.linalg.norm(base)
            vec = base + NOISE * _token_noise(token, DIM)
            vec = vec / np.linalg.norm(vec)
        comps = " ".join(f"{x:.5f}" for x in vec)
        lines.append(f"{token} {comps}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# covid policy fixture
# ---------------------------------------------------------------------------

def V(name):  # noqa: N802 - terse atom literals
    return {"var": name}


def C(value):  # noqa: N802
    return {"const": value}


COVID_POLICY = {
    "states": [
        {"id": "quarantining", "kind": "compliance", "frame": "quarantining",
         "default_adjuncts": {"duration_days": 14, "population": "school"}},
        {"id": "returning", "kind": "compliance", "frame": "returning",
         "default_adjuncts": {}, "default": True},
        {"id": "symptomatic", "kind": "intermediate", "frame": "symptomatic",
         "default_adjuncts": {}},
        {"id": "exposed", "kind": "intermediate", "frame": "exposed",
         "default_adjuncts": {}},
    ],
    "rules": [
        {"modality": "always", "provenance": "fixture:symptomatic-14",
         "antecedents": [{"pred": "symptomatic", "args": {"person": V("x")}}],
         "consequent": {"pred": "quarantining",
                        "args": {"person": V("x"), "duration": C("14 days"),
                                 "population": C("school")}}},
        {"modality": "always", "provenance": "fixture:exposed-5",
         "antecedents": [{"pred": "exposed", "args": {"person": V("x")}}],
         "consequent": {"pred": "quarantining",
                        "args": {"person": V("x"), "duration": C("5 days"),
                                 "population": C("school")}}},
        {"modality": "always", "provenance": "fixture:background-colocation",
         "antecedents": [{"pred": "co-location",
                          "args": {"person": V("x"), "companion": V("y")}}],
         "consequent": {"pred": "contact",
                        "args": {"person": V("x"), "other": V("y")}}},
        {"modality": "always", "provenance": "fixture:background-symmetry",
         "antecedents": [{"pred": "contact",
                          "args": {"person": V("x"), "other": V("y")}}],
         "consequent": {"pred": "contact",
                        "args": {"person": V("y"), "other": V("x")}}},
        {"modality": "always", "provenance": "fixture:contact-exposure",
         "antecedents": [
             {"pred": "contact", "args": {"person": V("x"), "other": V("y")}},
             {"pred": "symptomatic", "args": {"person": V("y")}},
         ],
         "consequent": {"pred": "exposed", "args": {"person": V("x")}}},
    ],
}


# ---------------------------------------------------------------------------
# main
# ---------------------------------------------------------------------------

def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)

    ontology_doc = {"frames": FRAMES}
    (DATA / "ontology.json").write_text(
        json.dumps(ontology_doc, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )

    (DATA / "stopwords.txt").write_text(
        "\n".join(STOPWORDS) + "\n", encoding="utf-8"
    )

    records = []
    for frame, text, trigger, roles in EVAL_SENTENCES:
        records.append(json.dumps({
            "frame": frame,
            "text": text,
            "trigger": list(_find(text, trigger)),
            "roles": {name: list(_find(text, phrase)) for name, phrase in roles.items()},
        }, sort_keys=True))
    (DATA / "eval_corpus.jsonl").write_text(
        "\n".join(records) + "\n", encoding="utf-8"
    )

    (DATA / "corpus.txt").write_text(
        "\n".join(CORPUS_LINES) + "\n", encoding="utf-8"
    )

    (DATA / "vectors.txt").write_text(make_vectors(), encoding="utf-8")

    (DATA / "covid_policy.json").write_text(
        json.dumps(COVID_POLICY, indent=2) + "\n", encoding="utf-8"
    )

    print(f"wrote fixtures to {DATA}")
    print(f"frames: {len(FRAMES)}")
    print(f"eval sentences: {len(EVAL_SENTENCES)}")
    print(f"corpus lines: {len(CORPUS_LINES)}")


if __name__ == "__main__":
    main()
