#!/usr/bin/env python3
"""Regenerates lexicon_en.tsv from the curated synonym groups below.

Each group lists words that are mutually substitutable in informal English
(tweet register). Every member becomes a headword mapping to the other
members of its group; words appearing in several groups merge their
synonym sets. Hyphenated entries are dropped (the tokenizer splits
punctuation, so they can never match a token).
"""

from pathlib import Path

GROUPS = """
good great fine decent solid
excellent outstanding superb exceptional terrific
awesome amazing fantastic incredible wonderful marvelous
bad poor lousy crummy subpar
awful terrible horrible dreadful atrocious abysmal
mediocre ordinary average unremarkable middling
perfect flawless ideal impeccable
nice pleasant agreeable lovely delightful
beautiful gorgeous stunning pretty attractive
ugly hideous unsightly unattractive grotesque
clean spotless tidy neat immaculate
dirty filthy grimy soiled grubby
new fresh recent novel
old ancient aged antique
young youthful juvenile
modern contemporary current
outdated obsolete archaic antiquated dated
cheap inexpensive affordable budget
expensive costly pricey overpriced
rich wealthy affluent prosperous loaded
broke destitute impoverished penniless needy
big large huge enormous giant massive
gigantic colossal immense vast tremendous mammoth
small little tiny miniature petite compact
minuscule microscopic minute
tall towering lofty
short stubby squat
wide broad expansive spacious roomy
narrow cramped tight confined
heavy weighty hefty bulky cumbersome
light lightweight feathery airy
fast quick rapid speedy swift brisk
slow sluggish leisurely unhurried plodding
strong powerful mighty sturdy robust
weak feeble frail flimsy fragile puny
hard difficult tough challenging demanding arduous
easy simple effortless straightforward painless
complex complicated intricate convoluted elaborate
clear obvious evident plain apparent unmistakable
vague unclear ambiguous murky hazy
bright brilliant radiant luminous gleaming
dark dim gloomy shadowy dusky
hot scorching sweltering boiling blazing
warm toasty balmy mild
cold chilly freezing frigid icy frosty
wet soaked drenched damp soggy
dry arid parched dehydrated
loud noisy deafening thunderous blaring
quiet silent hushed muted soundless
full packed crowded stuffed crammed jammed
empty vacant hollow bare deserted
safe secure protected sheltered
dangerous risky hazardous perilous unsafe treacherous
important crucial vital essential critical key
trivial minor insignificant negligible unimportant petty
real genuine authentic legitimate actual
fake phony counterfeit bogus fraudulent sham
true correct accurate right factual
false wrong incorrect mistaken erroneous inaccurate
smart intelligent clever brainy sharp
wise sensible prudent judicious shrewd
stupid dumb foolish idiotic brainless moronic
silly goofy ridiculous absurd ludicrous
crazy insane mad nuts deranged unhinged
weird strange odd bizarre peculiar freaky
normal typical usual standard regular conventional
rare scarce uncommon infrequent unusual
common widespread prevalent ubiquitous frequent
happy glad joyful cheerful delighted merry
ecstatic thrilled overjoyed elated jubilant
sad unhappy sorrowful miserable downcast
depressed dejected despondent heartbroken crushed
angry furious enraged irate livid
annoyed irritated aggravated exasperated peeved
scared afraid frightened terrified fearful petrified
anxious nervous worried uneasy apprehensive jittery
calm relaxed peaceful serene tranquil composed
tired exhausted weary fatigued drained sleepy
energetic lively vigorous spirited peppy
bored uninterested listless indifferent
excited eager enthusiastic pumped stoked
arrogant conceited smug boastful cocky
humble modest unassuming
kind gentle caring compassionate considerate
generous charitable giving selfless
cruel brutal vicious ruthless merciless heartless
mean nasty unkind spiteful malicious hateful
rude impolite disrespectful insolent discourteous
polite courteous respectful civil gracious
friendly amiable cordial sociable
hostile antagonistic unfriendly adversarial belligerent
honest truthful sincere candid forthright
dishonest deceitful lying untruthful duplicitous
loyal faithful devoted steadfast trustworthy
disloyal unfaithful treasonous
brave courageous fearless valiant bold daring
cowardly timid spineless gutless
lazy idle slothful lethargic
diligent hardworking industrious conscientious
careful cautious wary vigilant
careless reckless negligent sloppy rash
lucky fortunate blessed charmed
unlucky unfortunate hapless jinxed cursed
funny hilarious amusing comical humorous witty
serious grave solemn somber stern
interesting fascinating engaging captivating intriguing
boring dull tedious monotonous dreary tiresome
disgusting revolting repulsive gross vile nauseating
offensive insulting derogatory demeaning disparaging
bigoted prejudiced intolerant
toxic poisonous venomous noxious
violent aggressive savage ferocious
harmless innocuous benign inoffensive
guilty culpable blameworthy
innocent blameless faultless guiltless
famous renowned celebrated legendary notable
obscure unknown anonymous nameless
popular beloved favored trendy fashionable
unpopular disliked shunned friendless
strict rigid inflexible harsh
lenient permissive indulgent soft
fair just impartial equitable unbiased
unfair unjust biased partial
free liberated unshackled unrestricted
trapped confined imprisoned caged
healthy fit well wholesome hale
sick ill unwell ailing diseased
hungry starving famished ravenous peckish
drunk intoxicated inebriated wasted hammered plastered
sweet sugary saccharine honeyed
bitter acrid sour tart
spicy fiery zesty peppery
delicious tasty scrumptious delectable yummy
smooth sleek polished silky
rough coarse jagged uneven bumpy
soft plush cushy squishy tender
firm solid rigid stiff unyielding
flexible pliable supple elastic bendy
deep profound bottomless fathomless
shallow superficial
steep sheer precipitous abrupt
flat level even horizontal
crooked bent twisted warped askew
straight direct unbending linear
busy swamped overloaded occupied hectic
ready prepared set primed
certain sure confident positive convinced
uncertain unsure doubtful hesitant ambivalent
possible feasible viable doable attainable
impossible unattainable unachievable hopeless
likely probable expected anticipated
unlikely improbable
necessary required mandatory compulsory obligatory
optional voluntary discretionary elective
legal lawful legitimate permissible
illegal unlawful illicit forbidden prohibited banned
public open communal shared
private personal confidential secret
visible noticeable conspicuous prominent
invisible hidden concealed unseen
whole complete entire intact total
broken shattered fractured damaged busted
useful helpful handy practical beneficial
useless worthless pointless futile ineffective
valuable precious prized treasured priceless
plentiful abundant ample copious bountiful
sparse meager scant insufficient
extra additional supplementary spare surplus
enough sufficient adequate
absolute utter sheer downright
partial incomplete fragmentary unfinished
first initial earliest foremost
last final ultimate concluding closing
early premature untimely
late tardy delayed overdue
sudden abrupt unexpected instantaneous
gradual incremental steady stepwise
permanent lasting enduring everlasting perpetual
temporary fleeting momentary transient
constant continuous unceasing relentless nonstop
occasional sporadic intermittent periodic
eternal endless timeless infinite
say state declare remark utter
tell inform notify advise
speak talk converse chat
shout yell scream holler bellow
whisper murmur mutter mumble
ask inquire question query
answer reply respond retort
argue quarrel bicker squabble
complain whine gripe grumble moan
praise compliment commend applaud laud
criticize slam bash condemn denounce
mock ridicule taunt jeer deride
insult offend disrespect demean belittle
threaten intimidate menace bully
harass pester hound badger torment
attack assault assail ambush
defend protect guard shield safeguard
fight battle brawl clash scuffle
hit strike smack whack punch
push shove thrust nudge
pull tug yank drag haul
throw toss hurl fling lob chuck
catch grab seize snatch grasp
hold clutch grip clasp
release free liberate unleash
break smash shatter crack fracture
destroy demolish wreck annihilate obliterate ruin
damage harm impair mar
fix repair mend restore patch
build construct erect assemble
create make produce generate craft
invent devise concoct originate
copy duplicate replicate imitate mimic
change alter modify adjust revise
improve enhance upgrade refine better
worsen deteriorate degrade decline
grow expand enlarge swell increase
shrink contract dwindle diminish decrease
start begin commence initiate launch
stop halt cease quit discontinue
finish complete conclude finalize
continue proceed persist
pause suspend interrupt stall
wait linger loiter stay
leave depart exit vacate
arrive come appear
return reappear rejoin
walk stroll amble saunter trudge
run sprint dash jog race bolt
jump leap hop bound vault
climb ascend scale clamber
fall tumble plummet plunge drop
fly soar glide hover
swim paddle wade float
drive steer pilot maneuver
carry lug tote haul transport
send dispatch transmit forward mail
receive obtain acquire collect
give donate grant bestow provide
steal swipe pilfer pinch thieve rob
buy purchase procure
sell peddle vend hawk
pay compensate remunerate reimburse
spend splurge expend disburse
save stash hoard stockpile
waste squander fritter misuse
win triumph prevail succeed
lose fail flop falter
beat defeat conquer vanquish overcome
surrender yield capitulate submit concede
try attempt endeavor strive
achieve accomplish attain realize fulfill
avoid dodge evade sidestep shun
escape flee abscond scarper
chase pursue follow trail stalk
find discover locate uncover detect
hide conceal stash camouflage
search seek hunt scour rummage
look glance peek gaze stare
watch observe monitor view
see notice spot glimpse perceive
hear listen overhear eavesdrop
touch feel caress stroke
smell sniff whiff inhale
taste sample savor relish
eat consume devour munch gobble scarf
drink sip gulp swig guzzle chug
cook bake roast grill
cut slice chop dice carve
mix blend stir combine whisk
wash rinse scrub cleanse launder
wipe mop swab dab
sleep doze snooze slumber nap
wake awaken rouse
rest relax unwind recuperate lounge
work labor toil grind slog
play frolic romp cavort
dance boogie groove sway
sing croon chant hum
laugh giggle chuckle cackle snicker
smile grin beam smirk
cry weep sob bawl wail
frown scowl glower grimace
think ponder contemplate reflect muse deliberate
know understand comprehend grasp
learn study absorb master
teach instruct educate tutor coach
remember recall recollect reminisce
forget overlook disregard neglect
believe trust accept presume suppose
doubt question distrust suspect
decide choose select pick determine
refuse decline reject rebuff spurn
agree concur consent assent
disagree object dissent protest
promise pledge vow swear guarantee
lie fib fabricate deceive mislead
admit confess acknowledge concede
deny dispute refute contradict rebut
explain clarify elucidate expound
confuse baffle bewilder perplex mystify
show demonstrate display exhibit reveal
mask veil shroud cloak
help assist aid support back
hinder obstruct impede hamper block
allow permit authorize sanction
forbid prohibit ban bar outlaw
force compel coerce pressure oblige
persuade convince sway coax entice
discourage dissuade deter dishearten
encourage motivate inspire embolden uplift
warn caution alert forewarn
ignore snub dismiss rebuff
respect admire esteem revere honor
despise loathe detest abhor hate
love adore cherish treasure
like enjoy fancy appreciate
dislike resent begrudge
want desire crave covet yearn
need require demand necessitate
hope wish aspire dream
fear dread worry fret
surprise astonish amaze astound stun shock
scare frighten terrify startle spook alarm
soothe comfort console reassure pacify
annoy irritate bother irk vex nag
anger infuriate enrage incense madden
please delight gratify satisfy charm
disappoint dishearten underwhelm
embarrass humiliate shame mortify disgrace
celebrate commemorate toast fete
mourn grieve lament bewail
apologize atone repent
forgive pardon excuse absolve
punish penalize discipline
reward recompense repay
judge evaluate assess appraise gauge
compare contrast juxtapose liken
measure quantify calibrate
count tally enumerate number
calculate compute reckon figure
guess estimate speculate conjecture surmise
predict forecast foretell prophesy
plan organize arrange orchestrate coordinate
prepare ready equip brace
manage handle oversee administer supervise
control command dominate govern rule
obey comply heed conform
rebel revolt resist defy mutiny
lead guide direct steer shepherd
join unite merge combine affiliate
separate divide split partition detach
connect link attach couple bind
disconnect unplug sever
gather collect assemble amass accumulate
scatter disperse spread strew
include incorporate encompass contain
exclude omit eliminate
add append insert affix
remove delete erase expunge
replace substitute swap exchange
keep retain preserve maintain
discard dump ditch scrap jettison
use utilize employ apply wield
open unlock unseal unfasten
close shut seal fasten
end terminate abolish dissolve
increase boost raise amplify escalate
reduce lower decrease lessen curtail
stretch extend elongate lengthen
shorten trim truncate abbreviate clip
tighten constrict squeeze compress
loosen slacken relax release
lift raise hoist elevate
spin rotate twirl whirl revolve
shake tremble quiver shudder vibrate
slide glide slip skid
roll tumble somersault
bounce rebound ricochet spring
burn scorch char singe incinerate
freeze chill refrigerate
melt thaw liquefy dissolve
boil simmer bubble seethe
pour spill splash drizzle
leak drip seep ooze trickle
flow stream gush surge
shine glow gleam glitter sparkle shimmer
fade dim wane dull
appear emerge surface materialize
vanish disappear evaporate dissipate
exist live subsist endure
die perish expire succumb
kill slay murder assassinate slaughter
survive endure persist outlast weather
happen occur transpire unfold
cause trigger provoke induce prompt
prevent avert forestall preclude thwart
solve resolve crack untangle unravel
aggravate exacerbate inflame compound
ease alleviate mitigate relieve lighten
suffer endure undergo bear tolerate
heal recover mend recuperate convalesce
hurt injure wound maim bruise
shiver shudder tremble quake
sweat perspire swelter
breathe inhale exhale respire
cough hack wheeze splutter
babble ramble prattle jabber drivel
brag boast gloat crow
flatter fawn grovel
gossip blab tattle dish
slander defame smear libel malign vilify
accuse blame charge indict incriminate
snitch rat squeal inform
cheat swindle defraud con scam hustle
trick fool dupe hoodwink bamboozle
betray backstab
abandon desert forsake ditch
rescue save salvage retrieve
welcome greet receive embrace
ostracize banish exile blacklist
invite summon beckon call
meet encounter greet
travel journey roam wander trek voyage
explore investigate probe examine inspect
wander drift meander stray roam
settle inhabit occupy reside dwell
relocate migrate resettle move
post share publish upload
comment reply respond
follow subscribe track
block mute silence
troll bait provoke flame
spam flood bombard inundate
hack breach infiltrate compromise
download fetch retrieve pull
stream broadcast air televise
record tape capture log
unfollow unsubscribe unfriend
text message ping dm
person individual human soul
people folks individuals persons
man guy dude fellow gentleman bloke
woman lady gal female
child kid youngster minor juvenile
baby infant newborn toddler
teenager teen adolescent youth
adult grownup elder
friend pal buddy companion mate chum
enemy foe adversary rival nemesis
stranger outsider newcomer
neighbor local resident inhabitant
family relatives kin kinfolk household
parent guardian caregiver
mother mom mama mommy
father dad papa daddy
crowd mob throng horde swarm
group bunch cluster gang squad crew
team unit roster lineup
leader boss chief head honcho commander
worker employee laborer staffer
expert specialist authority professional ace
beginner novice rookie newbie amateur
fool idiot moron imbecile dunce simpleton
genius prodigy mastermind whiz savant
liar fibber fabricator deceiver
thief robber burglar crook bandit
criminal offender felon lawbreaker culprit
victim target prey casualty
hero champion savior protector
villain scoundrel rogue miscreant evildoer
coward chicken wimp weakling
bully tormentor intimidator aggressor oppressor
jerk creep lout boor cad
clown joker prankster comedian jester
loser failure washout underachiever
winner victor titleholder
house home residence dwelling abode
apartment flat unit condo
building structure edifice
room chamber quarters
city metropolis town municipality
village hamlet settlement township
country nation state homeland
world globe planet earth
place location spot site venue locale
area region zone district sector
road street avenue boulevard lane
path trail track route way
car vehicle automobile ride
truck lorry rig hauler
bike bicycle cycle
plane aircraft jet airliner
boat ship vessel craft
money cash currency funds dough bucks
wealth fortune riches affluence
debt liability arrears
price cost charge fee rate
job occupation profession career vocation gig
task chore duty assignment errand
business company firm enterprise corporation outfit
store shop outlet boutique market
food grub fare nourishment eats chow
meal feast banquet spread
snack bite nibble munchies
drink beverage refreshment libation
booze liquor alcohol spirits hooch
coffee java brew joe espresso
clothes clothing attire garments apparel
shoes footwear sneakers kicks
bag sack pouch satchel tote
book volume tome publication
story tale narrative account yarn
news report bulletin update headline
rumor gossip hearsay scuttlebutt
information data facts intel details
idea notion concept thought brainchild
opinion view stance viewpoint take
belief conviction creed tenet
plan scheme strategy blueprint roadmap
goal aim objective target ambition
problem issue trouble difficulty snag hiccup
solution answer remedy fix resolution
question query inquiry
mistake error blunder slip gaffe goof
success triumph victory achievement
failure defeat fiasco debacle flop
chance opportunity opening shot
risk gamble hazard peril
luck fortune serendipity happenstance
fate destiny providence karma
truth fact reality actuality
lie falsehood fib untruth fabrication
secret confidence mystery
rule regulation law statute ordinance
crime offense violation felony misdemeanor
punishment penalty sentence sanction
reward prize award bounty payoff
gift present offering donation
war conflict combat warfare hostilities
peace truce armistice ceasefire harmony
battle skirmish clash engagement
weapon arm armament firearm
argument dispute quarrel disagreement spat row
insult slur slight affront jab
threat menace intimidation ultimatum
abuse mistreatment maltreatment cruelty
hate hatred loathing animosity contempt disdain
anger rage fury wrath ire outrage
fear dread terror fright panic alarm
joy happiness delight bliss elation glee
sorrow sadness grief anguish heartache woe
pain ache agony torment suffering misery
pleasure enjoyment gratification
love affection adoration devotion fondness
envy jealousy covetousness resentment
pride vanity arrogance hubris ego
shame disgrace dishonor humiliation ignominy
respect esteem regard admiration reverence
trust confidence faith reliance
hope optimism expectation aspiration
despair hopelessness desperation gloom
stress strain pressure tension
comfort solace consolation relief
energy vigor vitality stamina pep
strength power might muscle force
weakness frailty infirmity vulnerability
health wellness fitness wellbeing
sickness illness disease ailment malady
injury wound trauma hurt
medicine remedy cure treatment drug
doctor physician medic clinician
hospital clinic infirmary ward
school academy institute college
teacher instructor educator professor tutor
student pupil learner scholar
lesson class lecture seminar session
test exam quiz assessment evaluation
grade mark score rating
game match contest competition tournament
sport athletics recreation
music tunes melodies songs
song track tune number
movie film flick picture
show program broadcast series
picture photo image snapshot pic
video clip footage recording
phone mobile cellphone handset
computer pc machine desktop
laptop notebook ultrabook
internet web net cyberspace
website site page portal
account profile handle username
password passcode pin credentials
email mail message correspondence
letter note missive memo
talk speech address oration
meeting gathering assembly conference
party celebration bash shindig
wedding marriage nuptials union
funeral burial memorial wake
holiday vacation getaway break
trip journey excursion outing jaunt
weather climate conditions elements
storm tempest squall gale
rain rainfall drizzle downpour shower
snow snowfall flurry blizzard
wind breeze gust draft
sun sunshine sunlight rays
cloud overcast haze fog
fire blaze flame inferno conflagration
flood deluge inundation torrent
earthquake tremor quake aftershock
disaster catastrophe calamity tragedy cataclysm
accident mishap collision crash wreck
emergency crisis urgency
danger peril hazard jeopardy menace
safety security protection refuge
shelter refuge haven sanctuary asylum
garbage trash rubbish waste refuse junk
mess clutter jumble disarray shambles
noise racket din clamor commotion
smell odor scent aroma fragrance
stink stench reek funk
taste flavor savor tang
color hue shade tint tone
shape form figure contour outline
size dimension magnitude proportion
amount quantity volume measure
piece part portion segment fragment chunk
edge rim margin border brink verge
middle center core midpoint heart
top summit peak apex crown pinnacle
bottom base foot underside
side flank face
front fore forefront vanguard
back rear tail stern
inside interior innards
outside exterior surface facade
beginning start onset outset dawn
ending finish conclusion finale close
moment instant second flash jiffy
smidgen trace hint touch
while spell stretch stint
time era epoch period age
day daytime daylight
night nighttime evening
morning dawn daybreak sunrise
afternoon midday noon
past history yesteryear antiquity
future tomorrow hereafter posterity
present now today currently
speed pace velocity tempo clip
distance span gap stretch interval
height elevation altitude stature
depth profundity deepness
weight mass heaviness load
temperature warmth heat chill
light illumination glow radiance
darkness gloom shadow murk blackness
silence stillness quietness hush
sound noise tone audio
voice speech vocals utterance
word term expression vocable
sentence phrase statement clause
language tongue dialect vernacular speech
name title moniker designation label
sign signal indication marker cue
symbol emblem icon insignia
mark stain blemish spot smudge
line stripe streak band strip
circle ring loop hoop
point dot speck fleck
hole opening gap aperture cavity
crack fissure crevice split rift
wall barrier partition divider
door entrance doorway entry portal
window pane casement
floor ground deck
ceiling roof overhead canopy
stairs steps staircase stairway
bridge span crossing overpass
tower spire turret
statue sculpture monument effigy
castle fortress citadel stronghold
farm ranch homestead
field meadow pasture plain
forest woods woodland timberland grove
mountain peak summit mount
hill knoll mound rise hillock
valley gorge ravine dale glen
river stream brook creek waterway
lake pond lagoon reservoir
sea ocean deep
beach shore coast seaside strand
island isle islet atoll
desert wasteland badlands
cave cavern grotto hollow
rock stone boulder slab
sand grit gravel silt
dirt soil earth loam
mud muck sludge mire slime
dust powder grime
metal alloy ore
gold bullion treasure riches
wood timber lumber
glass crystal pane
paper parchment sheet
cloth fabric textile material
rope cord twine cable
chain links shackle fetter
tool implement instrument utensil gadget
machine device apparatus contraption mechanism
engine motor powerplant
wheel tire rim
knife blade dagger cutter
gun firearm pistol revolver
bomb explosive charge ordnance
shield guard buffer bulwark
key opener passkey
lock latch bolt clasp
box container crate carton bin
bottle flask vial jug
cup mug tumbler goblet
plate dish platter saucer
bowl basin tureen
spoon scoop ladle
table desk counter bench
chair seat stool perch
bed bunk cot berth
lamp light fixture lantern
clock timepiece timer chronometer
mirror reflector
carpet rug mat
curtain drape blind shade
shelf ledge rack
drawer compartment tray
animal beast creature critter
dog pup hound pooch canine mutt
cat kitty feline kitten tabby
horse steed stallion mare pony
cow bovine cattle heifer
pig hog swine boar
sheep lamb ewe ram
bird fowl avian
insect bug pest
snake serpent viper
bear bruin grizzly
wolf lobo timberwolf
fox vixen reynard
rabbit bunny hare cottontail
mouse rodent vermin
monkey ape primate simian
elephant pachyderm tusker
plant flora vegetation greenery
tree sapling hardwood
flower blossom bloom bud
grass turf sod lawn
leaf frond foliage
root tuber rhizome
seed kernel germ pip
fruit produce harvest
vegetable veggie greens
grain cereal wheat
bread loaf roll bun
meat flesh protein
milk dairy cream
cheese curd cheddar
egg ovum yolk
sugar sweetener glucose
salt sodium seasoning
oil grease lubricant
butter margarine
soup broth stew chowder
cake pastry gateau torte
candy sweets confection treats
juice nectar squash
tea chai
beer ale lager
wine vino vintage
body physique frame build
head skull noggin cranium
face visage countenance mug
eye peeper orb
nose snout schnoz beak
mouth maw gob trap
tooth fang molar incisor
hair locks mane tresses
hand palm mitt paw
finger digit pointer
heart ticker pump
brain mind intellect noodle
blood lifeblood plasma
bone skeleton
skin hide epidermis
muscle sinew brawn
stomach belly gut tummy abdomen
throat gullet windpipe
wing pinion
fur pelt coat fleece
feather plume quill down
claw talon
horn antler tusk
"""


def main() -> None:
    entries: dict[str, set[str]] = {}
    groups = 0
    for raw_line in GROUPS.strip().splitlines():
        words = [w.lower() for w in raw_line.split() if "-" not in w]
        if len(words) < 2:
            raise SystemExit(f"group too small after filtering: {raw_line!r}")
        if len(set(words)) != len(words):
            raise SystemExit(f"duplicate within group: {raw_line!r}")
        groups += 1
        for word in words:
            entries.setdefault(word, set()).update(w for w in words if w != word)

    for head, syns in entries.items():
        syns.discard(head)
        if not syns:
            raise SystemExit(f"empty synonym set for {head!r}")

    out = Path(__file__).with_name("lexicon_en.tsv")
    with out.open("w", encoding="utf-8") as fh:
        for head in sorted(entries):
            fh.write(head + "\t" + "\t".join(sorted(entries[head])) + "\n")
    print(f"groups: {groups}, headwords: {len(entries)}")


if __name__ == "__main__":
    main()
