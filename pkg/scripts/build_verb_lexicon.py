#!/usr/bin/env python3
"""Regenerate src/actionsieve/data/verbs.txt.

Expands a curated list of English verb lemmas (heavy on physical actions,
plus high-frequency general verbs) into their inflected forms: 3rd-person
singular, past, past participle and present participle. Irregular verbs come
from an explicit table; regular inflection applies e-drop, y->ies and
consonant doubling. For consonant-vowel-consonant stems both the doubled and
plain variants are emitted, since stress placement decides which is correct
and a membership lexicon is harmless to over-generate.
"""

from __future__ import annotations

from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "actionsieve" / "data" / "verbs.txt"

VOWELS = set("aeiou")

# lemma -> extra irregular forms (past, participle, oddball spellings)
IRREGULAR: dict[str, tuple[str, ...]] = {
    "be": ("am", "is", "are", "was", "were", "been", "being"),
    "have": ("has", "had", "having"),
    "do": ("does", "did", "done", "doing"),
    "go": ("goes", "went", "gone", "going"),
    "say": ("says", "said", "saying"),
    "make": ("made",),
    "know": ("knew", "known"),
    "think": ("thought",),
    "take": ("took", "taken"),
    "see": ("saw", "seen"),
    "come": ("came",),
    "get": ("got", "gotten"),
    "give": ("gave", "given"),
    "find": ("found",),
    "tell": ("told",),
    "become": ("became",),
    "show": ("showed", "shown"),
    "leave": ("left",),
    "feel": ("felt",),
    "put": ("put",),
    "bring": ("brought",),
    "begin": ("began", "begun"),
    "keep": ("kept",),
    "hold": ("held",),
    "write": ("wrote", "written"),
    "stand": ("stood",),
    "hear": ("heard",),
    "let": ("let",),
    "mean": ("meant",),
    "set": ("set",),
    "meet": ("met",),
    "run": ("ran",),
    "pay": ("paid",),
    "sit": ("sat",),
    "speak": ("spoke", "spoken"),
    "lie": ("lay", "lain", "lying"),
    "lay": ("laid",),
    "lead": ("led",),
    "read": ("read",),
    "grow": ("grew", "grown"),
    "lose": ("lost",),
    "fall": ("fell", "fallen"),
    "send": ("sent",),
    "build": ("built",),
    "understand": ("understood",),
    "draw": ("drew", "drawn"),
    "break": ("broke", "broken"),
    "spend": ("spent",),
    "cut": ("cut",),
    "rise": ("rose", "risen"),
    "drive": ("drove", "driven"),
    "buy": ("bought",),
    "wear": ("wore", "worn"),
    "choose": ("chose", "chosen"),
    "seek": ("sought",),
    "throw": ("threw", "thrown"),
    "catch": ("caught",),
    "deal": ("dealt",),
    "win": ("won",),
    "forget": ("forgot", "forgotten"),
    "lend": ("lent",),
    "hang": ("hung", "hanged"),
    "fly": ("flew", "flown"),
    "strike": ("struck",),
    "sell": ("sold",),
    "ride": ("rode", "ridden"),
    "eat": ("ate", "eaten"),
    "drink": ("drank", "drunk"),
    "sing": ("sang", "sung"),
    "swim": ("swam", "swum"),
    "ring": ("rang", "rung"),
    "swing": ("swung",),
    "cling": ("clung",),
    "fling": ("flung",),
    "sting": ("stung",),
    "spring": ("sprang", "sprung"),
    "sink": ("sank", "sunk"),
    "shrink": ("shrank", "shrunk"),
    "stink": ("stank", "stunk"),
    "sleep": ("slept",),
    "sweep": ("swept",),
    "weep": ("wept",),
    "creep": ("crept",),
    "leap": ("leapt", "leaped"),
    "kneel": ("knelt", "kneeled"),
    "feed": ("fed",),
    "bleed": ("bled",),
    "breed": ("bred",),
    "speed": ("sped", "speeded"),
    "flee": ("fled",),
    "shoot": ("shot",),
    "fight": ("fought",),
    "teach": ("taught",),
    "light": ("lit", "lighted"),
    "slide": ("slid",),
    "hide": ("hid", "hidden"),
    "bite": ("bit", "bitten"),
    "hit": ("hit",),
    "shut": ("shut",),
    "hurt": ("hurt",),
    "cost": ("cost",),
    "burst": ("burst",),
    "spread": ("spread",),
    "bend": ("bent",),
    "dig": ("dug",),
    "stick": ("stuck",),
    "spin": ("spun",),
    "steal": ("stole", "stolen"),
    "freeze": ("froze", "frozen"),
    "wake": ("woke", "woken"),
    "weave": ("wove", "woven"),
    "tear": ("tore", "torn"),
    "swear": ("swore", "sworn"),
    "bear": ("bore", "borne"),
    "beat": ("beat", "beaten"),
    "bind": ("bound",),
    "grind": ("ground",),
    "wind": ("wound",),
    "shake": ("shook", "shaken"),
    "blow": ("blew", "blown"),
    "shine": ("shone", "shined"),
    "tread": ("trod", "trodden"),
    "arise": ("arose", "arisen"),
    "awake": ("awoke", "awoken"),
    "forgive": ("forgave", "forgiven"),
    "dream": ("dreamt", "dreamed"),
    "learn": ("learnt", "learned"),
    "burn": ("burnt", "burned"),
    "smell": ("smelt", "smelled"),
    "spill": ("spilt", "spilled"),
    "spoil": ("spoilt", "spoiled"),
    "spit": ("spat", "spit"),
    "dive": ("dove", "dived"),
    "slay": ("slew", "slain"),
    "sew": ("sewed", "sewn"),
    "mow": ("mowed", "mown"),
    "saw": ("sawed", "sawn"),
    "swell": ("swelled", "swollen"),
    "bet": ("bet",),
    "split": ("split",),
    "quit": ("quit",),
    "shed": ("shed",),
    "cast": ("cast",),
    "knit": ("knit", "knitted"),
    "wring": ("wrung",),
    "overtake": ("overtook", "overtaken"),
    "withdraw": ("withdrew", "withdrawn"),
}

BASE_VERBS = """
accelerate accept accompany adjust admire admit advance advise aim allow
announce answer appear applaud apply approach argue arrange arrive ask
assemble assist attach attack attempt attend avoid awaken
back bake balance band bandage bang bark bat bathe beckon beg begin behave
believe belong bend bicker bike blend blink block blow board bob boil bounce
bow bowl box braid brake breathe brew browse brush buckle budge bump burn
burst bury busk button
call calm camp carry carve catch celebrate change charge chase chat cheer
chew chop chuckle circle clamber clap clasp claw clean clear climb clinch
cling clip close clutch coach collapse collect comb comfort command compete
complain complete conduct confront congratulate connect construct continue
cook cough count cover crack cradle crash crawl create creep cross crouch
crumble crush cry cuddle curl curtsy cycle
dab dance dangle dart dash decide decorate defend deliver demonstrate depart
descend describe detach dig dine dip direct disappear discard discuss
dismount display distribute disturb dodge dole dot drag drain dress dribble
drift drill drink drip drive drop drum dry duck dunk dust
earn elbow embrace emerge empty encourage enjoy enter escape examine exchange
exercise exhale exit expect explain explore extend
face fail fan fasten feed feel fetch fiddle fidget fill film finish fish fist
fix flail flap flatten flex flick flinch flip float flop flourish flow fold
follow force fumble
gallop gather gaze gesture gesticulate giggle glance glare glide grab grasp
greet grill grimace grin grip groan groom guard guide gulp
hammer hand handle haul head help hesitate hike hobble hoist hold hop hose
hover howl hug hum hurl hurry
imitate inch indicate inflate inhale inspect install instruct interact
intercept interrupt introduce invite iron
jab jam jerk jog join joke juggle jump
keel kick kiss knead kneel knock knot
label ladle land laugh launch lean leap lecture lift limp line linger listen
load lock loiter lounge lower lug lunge lurch
march massage measure mend mime mimic mingle miss mix moan mop motion mount
move mumble munch murmur
nail nap narrate navigate nibble nod notice nudge nuzzle
obey observe offer open operate order organize overlap overturn
pace pack paddle paint pan pant parade pass pat patrol pause paw pedal peel
peek peer perform pet photograph pick pile pin pinch pirouette pitch pivot
place plant play plead pluck plunge point poke polish position pose pound
pour practice practise praise prepare present press pretend prod project
prop propel protect pull pump punch push
race raise rake reach react rearrange rebound receive recite recline record
rehearse relax release remove repair repeat replace rescue rest retreat
retrieve return reveal rinse rip rock roll rotate row rub ruffle rummage rush
sail salute sand saunter scamper scan scatter scold scoop scoot scramble
scrape scratch scream screw scrub scurry seat secure seize serve settle shave
shift shiver shout shove shovel shrug shuffle sidestep sigh signal sip skate
sketch ski skid skip slam slap slice slip slither slouch slump smack smash
smile smirk snap snatch sneak sneeze sniff snore snuggle soak sob somersault
sort speak spar sparkle spike spill splash spray sprint squat squeal squeeze
squint squirm stack stagger stamp stare start startle steer step stir stomp
stoop stop storm straddle straighten strain stretch stride stroll stroke
struggle strum strut study stumble supervise support surf surround swallow
sway sweat swerve swipe swirl switch
tackle tag talk tap taste tease thank thrash thread throw thrust tickle tidy
tie tilt tiptoe toast toss touch tour tow towel train trample transfer
transport travel tremble trim trip trot try tuck tug tumble turn twirl twist
type
unbuckle unbutton uncover unfold unload unlock unpack unroll untie unwrap
unzip usher utter
vacuum vault vend venture visit volley volunteer
wade wag walk wander warm warn wash watch water wave weigh whack whip whirl
whisk whisper whistle wiggle wipe wobble work wrap wrestle wriggle yank yawn
yell zigzag zip zoom
act add address adopt agree analyze appreciate approve assign assume assure
attract balance base battle behold bless boast boost borrow bother breathe
brief broadcast calculate cancel capture care cause caution cease challenge
check cherish choose cite claim classify coincide collaborate combine
commend comment commit communicate compare compile compose conclude confirm
consider consist consult consume contact contain contribute control convey
convince cooperate coordinate copy correct correspond craft criticize
debate decline decrease dedicate define delay delight depend deposit design
desire destroy determine develop devote differ digest diminish dominate
donate doubt drown ease edit educate elect eliminate employ enable enclose
end endure engage enhance enlarge ensure entertain establish estimate
evaluate evolve exceed excel excite excuse execute exist expand experience
experiment express facilitate fancy favor feature finance flash flatter
flaunt focus forbid forecast form found function gain gamble generate govern
grant grieve guarantee guess handle happen harvest hate heal heat hire honor
hope host hunt hurry identify ignore illustrate imagine imply import impress
improve include increase infer inform inject injure insist inspire intend
interest interpret interview invent invest investigate involve issue judge
justify kid kindle lack last launch learn lease levitate license like limit
list live locate long look love maintain manage manufacture mark market
marry master matter mature melt mention merge migrate mind model modify
monitor motivate name need neglect negotiate note nourish object obtain
occupy occur operate oppose opt outline overcome owe own participate perceive
permit persist persuade phone photograph picture plan please pledge plot
possess postpone pray predict prefer preserve prevail prevent print proceed
process produce promise promote pronounce propose prove provide publish
purchase pursue qualify question quote rain rank rate realize reason recall
recognize recommend reduce refer reflect refuse regard register regret
relate rely remain remark remember remind rent report represent request
require resemble reserve reside resist resolve respect respond result resume
retain retire reunite review revise reward ripen roam roar ruin rule sample
satisfy save scare schedule score search seem select sense separate share
shelter shock shop shriek sign signify simmer sketch slow smoke snack snooze
socialize solve sparkle specify sponsor spot sprinkle stage starve state
stay stitch store strive stress stroll substitute succeed suffer suggest
suit supply suppose surprise survive suspect sustain swap tan tangle target
taste teeter tend term test thrive tighten tolerate trace trade transform
translate treat trick trust understand undertake unite unveil update upgrade
uphold upset urge use value vanish vary verify view vow wait want warble
waste wear weave wed welcome whimper whine wish witness wonder worry
""".split()


def third_person(lemma: str) -> str:
    if lemma.endswith(("s", "sh", "ch", "x", "z", "o")):
        return lemma + "es"
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in VOWELS:
        return lemma[:-1] + "ies"
    return lemma + "s"


def cvc_stem(lemma: str) -> bool:
    if len(lemma) < 3:
        return False
    a, b, c = lemma[-3], lemma[-2], lemma[-1]
    return (
        a not in VOWELS
        and b in VOWELS
        and c not in VOWELS
        and c not in "wxy"
    )


def suffixed(lemma: str, suffix: str) -> set[str]:
    """All plausible spellings of lemma + ing / lemma + ed."""
    out: set[str] = set()
    if lemma.endswith("ie") and suffix == "ing":
        out.add(lemma[:-2] + "ying")
        return out
    if lemma.endswith("e") and not lemma.endswith(("ee", "oe", "ye")):
        out.add(lemma[:-1] + suffix)
        return out
    if lemma.endswith(("ee", "oe", "ye")) and suffix == "ed":
        out.add(lemma[:-1] + suffix)
        return out
    if lemma.endswith("y") and suffix == "ed":
        if len(lemma) > 1 and lemma[-2] not in VOWELS:
            out.add(lemma[:-1] + "ied")
            return out
    if cvc_stem(lemma):
        out.add(lemma + lemma[-1] + suffix)
    out.add(lemma + suffix)
    return out


def expand(lemma: str) -> set[str]:
    forms = {lemma, third_person(lemma)}
    forms |= suffixed(lemma, "ing")
    if lemma in IRREGULAR:
        forms |= set(IRREGULAR[lemma])
    else:
        forms |= suffixed(lemma, "ed")
    return forms


def main() -> None:
    lemmas = sorted(set(BASE_VERBS) | set(IRREGULAR))
    forms: set[str] = set()
    for lemma in lemmas:
        if not lemma.isascii() or not lemma.isalpha():
            raise SystemExit(f"bad lemma: {lemma!r}")
        forms |= expand(lemma.lower())
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(sorted(forms)) + "\n", encoding="utf-8")
    print(f"{len(lemmas)} lemmas -> {len(forms)} forms -> {OUT}")


if __name__ == "__main__":
    main()
