//! Message templates for the bundled sample corpus, in three parallel
//! languages: Chichewa, a fluent English rendering and a literal
//! machine-translation-style rendering. Slot values are shared across the
//! languages of one record, so the corpora stay record-parallel.

/// One template family: the same message in the three corpus languages.
pub struct Template {
    pub chi: &'static str,
    pub ht: &'static str,
    pub mt: &'static str,
}

pub const FRAUD_TEMPLATES: &[Template] = &[
    Template {
        chi: "TRANSPORTER: Ndine transporter kuchokela ku {city_za}. Ndanyamula katundu wa m'bale wanu. Tumizani K{amount} pa {phone} kuti katundu adutse pa border ya Mwanza.",
        ht: "TRANSPORTER: I am a transporter coming from {city_za}. I am carrying a parcel from your relative. Send K{amount} to {phone} so the parcel can clear the Mwanza border.",
        mt: "TRANSPORTER: I am transporter from {city_za}. I carried luggage of your brother. Send K{amount} on {phone} so luggage passes on border of Mwanza.",
    },
    Template {
        chi: "Ndine agent wa {momo}. Ndatumiza K{amount} molakwika pa nambala yanu. Chonde mubwezere pa {phone} musanathe maola awiri.",
        ht: "I am a {momo} agent. I sent K{amount} to your number by mistake. Please send it back to {phone} within two hours.",
        mt: "I am agent of {momo}. I sent K{amount} wrongly on your number. Please return on {phone} before two hours finish.",
    },
    Template {
        chi: "Mwachita mwayi! Nambala yanu yapambana K{amount} pa promotion ya {brand}. Kuti mulandile mphotho tumizani K{fee} pa {phone}.",
        ht: "You have been lucky! Your number has won K{amount} in the {brand} promotion. To receive the prize, send K{fee} to {phone}.",
        mt: "You got luck! Your number won K{amount} on promotion of {brand}. To get prize send K{fee} on {phone}.",
    },
    Template {
        chi: "{org} ikupeleka ndalama kwa azimayi zoyambila business. Tiyimbileni pa {phone} kuti mulandile K{amount} yanu.",
        ht: "{org} is giving out money to women for starting businesses. Call us on {phone} to receive your K{amount}.",
        mt: "{org} gives money to women to start business. Call us on {phone} to receive your K{amount}.",
    },
    Template {
        chi: "Social Cash Transfer: banja lanu lasankhidwa kulandila ndalama za Mtukula Pakhomo. Tiyimbileni lamya pa {phone} kuti mulandile ndalama zanu.",
        ht: "Social Cash Transfer: your family has been selected to receive Mtukula Pakhomo money. Call us on {phone} to receive your money.",
        mt: "Social Cash Transfer: family yours is chosen to get money of Mtukula Pakhomo. Ring us on {phone} to receive money yours.",
    },
    Template {
        chi: "Kodi mukufuna miracle money? Prophet {name} akupereka madalitso a chuma. Tumizani K{fee} pa {phone} kuti mulandire madalitso.",
        ht: "Do you want miracle money? Prophet {name} is giving out blessings of wealth. Send K{fee} to {phone} to receive the blessing.",
        mt: "You want miracle money? Prophet {name} gives blessings of riches. Send K{fee} on {phone} to get blessing.",
    },
    Template {
        chi: "Lowani m'gulu lathu la chinsinsi kuti mulemere msanga. Tumizani K{fee} pa {phone} kuti mulowe m'gulu.",
        ht: "Join our secret group so you can get rich quickly. Send K{fee} to {phone} to join the group.",
        mt: "Enter in secret group ours to be rich fast. Send K{fee} on {phone} to enter group.",
    },
    Template {
        chi: "Okondedwa akasitomala, dziwani kuti nambala yanu ya chinsisi ibulokedwa pakadutsa 24 hours. Imbani {phone} kapena tumizani PIN yanu kuti musunge account.",
        ht: "Dear customer, be informed that your PIN will be blocked after 24 hours. Call {phone} or send your PIN to keep your account.",
        mt: "Dear customer, know that secret number yours will be blocked when 24 hours pass. Call {phone} or send PIN yours to keep account.",
    },
    Template {
        chi: "Pali mwayi wa ntchito ya {job} pa {org}. Tumizani K{fee} ya registration pa {phone} kuti dzina lanu lilembedwe.",
        ht: "There is a job opening for a {job} at {org}. Send a K{fee} registration fee to {phone} so your name is put on the list.",
        mt: "There is chance of work of {job} at {org}. Send K{fee} of registration on {phone} so name yours is written.",
    },
    Template {
        chi: "Ndine {name}, ndagwidwa ndi mavuto pa ulendo ku {town}. Nditumizireni K{amount} pa nambala iyi {phone} ndibweza mawa.",
        ht: "I am {name}, I have run into trouble on a journey to {town}. Send me K{amount} on this number {phone}, I will pay back tomorrow.",
        mt: "I am {name}, problems caught me on journey to {town}. Send me K{amount} on this number {phone} I return tomorrow.",
    },
    Template {
        chi: "Mukufuna ngongole ya ndalama mpaka K{amount} popanda chikole? Tumizani dzina ndi ID yanu pa {phone} lero lomwe.",
        ht: "Do you want a cash loan of up to K{amount} without collateral? Send your name and ID to {phone} today.",
        mt: "You want loan of money up to K{amount} without security? Send name and ID yours on {phone} today now.",
    },
    Template {
        chi: "Abale mu Khristu, thandizani ntchito ya Mulungu ndi zopereka. Tumizani pa {momo} nambala {phone}. Mulungu akudalitsani ndi chuma chochuluka.",
        ht: "Brethren in Christ, support the work of God with offerings. Send through {momo} on {phone}. God will bless you with great wealth.",
        mt: "Brothers in Christ, help work of God with givings. Send on {momo} number {phone}. God bless you with riches many.",
    },
    Template {
        chi: "Congratulations! SIM yanu yasankhidwa pa {brand} lottery ya K{amount}. Imbani {phone} msanga kuti muuze agent dzina lanu.",
        ht: "Congratulations! Your SIM has been selected in the {brand} lottery for K{amount}. Call {phone} quickly and give the agent your name.",
        mt: "Congratulations! SIM yours is chosen on {brand} lottery of K{amount}. Call {phone} fast to tell agent name yours.",
    },
    Template {
        chi: "Katundu wanu wafika pa ofesi yathu ya {town}. Tumizani K{fee} ya clearance pa {phone} kuti mulandire katundu lero.",
        ht: "Your parcel has arrived at our {town} office. Send a K{fee} clearance fee to {phone} to receive the parcel today.",
        mt: "Luggage yours arrived on office ours of {town}. Send K{fee} of clearance on {phone} to receive luggage today.",
    },
    Template {
        chi: "kandalama kaja mungotumizani pa nambala iyi {phone} imalemba {name}. musaiwale lero.",
        ht: "just send that little money to this number {phone}, the name on it is {name}. do not forget today.",
        mt: "that small money you just send on this number {phone} it writes {name}. not forget today.",
    },
    Template {
        chi: "tiyimbileni pa {phone} kuti mumve za mphatso yanu ya K{amount} yomwe ikudikila.",
        ht: "call us on {phone} to hear about your K{amount} gift that is waiting.",
        mt: "call us on {phone} so you hear of gift yours of K{amount} which waits.",
    },
];

pub const NORMAL_TEMPLATES: &[Template] = &[
    Template {
        chi: "Mwagula {bundle} ya {size}GB itha pa {date} {time} hrs. Imbani *{ussd}# kuti muone balance yanu.",
        ht: "You have bought a {size}GB {bundle} expiring on {date} at {time} hrs. Dial *{ussd}# to check your balance.",
        mt: "You bought {bundle} of {size}GB it ends on {date} {time} hrs. Call *{ussd}# to see balance yours.",
    },
    Template {
        chi: "Sasangalalani! Mwalandila bonasi ya mphindi {n} zoyimbira anzanu a {brand}. Imbani *{ussd}# kuti mugwiritse ntchito.",
        ht: "Good news! You have received a bonus of {n} minutes for calling your {brand} friends. Dial *{ussd}# to use it.",
        mt: "Be happy! You received bonus of minutes {n} of calling friends yours of {brand}. Call *{ussd}# to use work.",
    },
    Template {
        chi: "Tiketi imodzi YAULELE ya MK{amount} ikudikila inu {phone}. Muthakupata pompo. Tumizani YES ku {short}.",
        ht: "One FREE MK{amount} ticket is waiting for you {phone}. You could win instantly. Send YES to {short}.",
        mt: "Ticket one FREE of MK{amount} waits you {phone}. You can get there there. Send YES to {short}.",
    },
    Template {
        chi: "Yankhani mafunso a {brand} supa ligi kuti mupeze mwayi okhala m'modzi mwa anthu {n} opata K{amount} sabata iliyonse. Tumizani QN ku {short}. Mtengo ndi K{fee}.",
        ht: "Answer the {brand} Supa League questions to stand a chance of being one of the {n} people winning K{amount} every week. Send QN to {short}. The cost is K{fee}.",
        mt: "Answer questions of {brand} supa league to find chance to be one among people {n} getting K{amount} every week. Send QN to {short}. Price is K{fee}.",
    },
    Template {
        chi: "tayimbaso apapa ndili pa line ndikudikirani.",
        ht: "call me again now, I am on the line waiting for you.",
        mt: "call again here I am on line I wait you.",
    },
    Template {
        chi: "kuti tilumikizane imbani foni chifukwa lelo sindibwela ku {town}.",
        ht: "call me so we can talk, because I am not coming to {town} today.",
        mt: "so we connect call phone because today I not come to {town}.",
    },
    Template {
        chi: "ndafika bwino ku {town}, tionana {day}. zikomo kwambiri.",
        ht: "I have arrived safely in {town}, see you on {day}. Thank you very much.",
        mt: "I arrived good at {town}, we see {day}. thank you much.",
    },
    Template {
        chi: "{name}, ndatumiza ndalama ija pa {momo}. ndiuzeni mukalandira.",
        ht: "{name}, I have sent that money through {momo}. Let me know when you receive it.",
        mt: "{name}, I sent that money on {momo}. tell me when you receive.",
    },
    Template {
        chi: "Msonkhano wa mpingo udzachitika {day} pa {time} koloko ku {town}. Mubwere ndi Baibulo lanu.",
        ht: "The church meeting will take place on {day} at {time} o'clock in {town}. Come with your Bible.",
        mt: "Meeting of church will happen {day} on {time} clock at {town}. You come with Bible yours.",
    },
    Template {
        chi: "{team} yagonjetsa {team2} {score} pa mpikisano wa lero ku {town}.",
        ht: "{team} beat {team2} {score} in today's match in {town}.",
        mt: "{team} won {team2} {score} on competition of today at {town}.",
    },
    Template {
        chi: "achimwene, ndibweza ngongole yanu ya K{amount} {day}. pepani pa kuchedwa.",
        ht: "my brother, I will pay back your K{amount} loan on {day}. Sorry for the delay.",
        mt: "brother, I return loan yours of K{amount} {day}. sorry on lateness.",
    },
    Template {
        chi: "mayi, ndagula {goods} pa msika wa {town}. mtengo wake K{amount}. ndibwera nazo madzulo.",
        ht: "mother, I bought {goods} at the {town} market. The price was K{amount}. I will bring them in the evening.",
        mt: "mother, I bought {goods} on market of {town}. price of it K{amount}. I come with them evening.",
    },
    Template {
        chi: "a {name}, sukulu yatseka {day}. chonde mundisungire ndalama za fees ndikabwera.",
        ht: "dear {name}, school closes on {day}. Please keep the fees money for me until I come.",
        mt: "{name}, school closed {day}. please keep for me money of fees when I come.",
    },
    Template {
        chi: "mwana akudwala, ndikupita naye ku chipatala cha {town}. ndikuuzani zotsatira.",
        ht: "the child is sick, I am taking him to the {town} hospital. I will tell you the results.",
        mt: "child is sick, I go with him to hospital of {town}. I tell you results.",
    },
    Template {
        chi: "Bwelani ku {org2} Herbal Healing ku {town} kuti muzagule mankhwala amatenda osiyanasiyana.",
        ht: "Come to {org2} Herbal Healing in {town} to buy medicine for various illnesses.",
        mt: "Come to {org2} Herbal Healing at {town} to buy medicines of diseases different different.",
    },
    Template {
        chi: "Magetsi azima {day} kuyambira {time} koloko m'madera a {town} chifukwa cha ntchito zokonza ma line.",
        ht: "Electricity will go off on {day} from {time} o'clock in parts of {town} because of line maintenance works.",
        mt: "Electricity dies {day} starting {time} clock in areas of {town} because of works of fixing lines.",
    },
    Template {
        chi: "nambala yanu sikumapezeka. mundiyimbire ndikamaliza kalasi {time} koloko.",
        ht: "your number has not been reachable. Call me when I finish class at {time} o'clock.",
        mt: "number yours is not found. call me when I finish class {time} clock.",
    },
    Template {
        chi: "ndine {name}. tidzaonana pa msonkhano wa {day} ku {town}.",
        ht: "I am {name}. We will meet at the {day} meeting in {town}.",
        mt: "I am {name}. we will see at meeting of {day} at {town}.",
    },
    Template {
        chi: "watumizidwa katundu wanu kuchokera ku {town}, mudzawulandira posachedwa. imbani {phone} mukafuna zambiri.",
        ht: "your parcel has been sent from {town}, you will receive it shortly. call {phone} if you need more details.",
        mt: "luggage yours is sent from {town}, you will receive soon. call {phone} if you want more.",
    },
    Template {
        chi: "a {name}, chonde mundtumizire ndalama za fees K{amount} pa {phone} sukulu isanatseke.",
        ht: "dear {name}, please send me the K{amount} fees money on {phone} before school closes.",
        mt: "{name}, please send me money of fees K{amount} on {phone} before school closes.",
    },
    Template {
        chi: "nambala iyi {phone} ndi ya {name}. tumizaniko ndalama ija ya K{amount} lero.",
        ht: "this number {phone} belongs to {name}. send that K{amount} money there today.",
        mt: "number this {phone} is of {name}. send there that money of K{amount} today.",
    },
    Template {
        chi: "mwachita mwayi kupezeka pa mndandanda wa {org}. mudzalandira thandizo posachedwa ku {town}.",
        ht: "you were lucky to be found on the {org} list. you will receive support soon in {town}.",
        mt: "you got luck to be found on list of {org}. you will receive help soon at {town}.",
    },
];

/// Families instantiated for BOTH classes: money requests, callbacks and
/// parcel notices whose class genuinely depends on context the text does
/// not carry. They put an irreducible floor under every classifier.
pub const AMBIGUOUS_TEMPLATES: &[Template] = &[
    Template {
        chi: "{name}, chonde tumizani K{amount} pa nambala iyi {phone} lero.",
        ht: "{name}, please send K{amount} to this number {phone} today.",
        mt: "{name}, please send K{amount} on number this {phone} today.",
    },
    Template {
        chi: "ndine {name}, tandiyimbireni pa {phone} nkhani yake ndi ya ndalama.",
        ht: "I am {name}, call me back on {phone}, it is about money.",
        mt: "I am {name}, call me on {phone} issue of it is of money.",
    },
    Template {
        chi: "katundu wanu uli pa njira kuchokera ku {city_za}. mudzalandira posachedwa.",
        ht: "your parcel is on the way from {city_za}. you will receive it soon.",
        mt: "luggage yours is on way from {city_za}. you receive soon.",
    },
    Template {
        chi: "ndalama ya K{amount} yalowa pa {momo} yanu. imbani {phone} ngati si inu.",
        ht: "K{amount} has entered your {momo}. call {phone} if it was not you.",
        mt: "money of K{amount} entered on {momo} yours. call {phone} if not you.",
    },
];

pub const TELCO_TEMPLATES: &[Template] = &[
    Template {
        chi: "Okonedwa akasitomala, mwatsala ndi MK{balance}. Imbani *{ussd}# kuti mubwereke mayunitsi ndi KUTAPA. Sangalalani ndi macheza osatha ndi network ya {brand}.",
        ht: "Dear customer, you have a balance of MK{balance}. Dial *{ussd}# to borrow airtime with KUTAPA. Enjoy endless conversations with the {brand} network.",
        mt: "Dear customer, you are left with MK{balance}. Dial *{ussd}# to rent units with KUTAPA. Enjoy endless chats with {brand} network.",
    },
    Template {
        chi: "Dziwani kuti data bundle yanu ya {size}GB itha {day} pa {time} hrs. Imbani *{ussd}# kuti muwonjezere musanathe nthawi.",
        ht: "Be informed that your {size}GB data bundle expires on {day} at {time} hrs. Dial *{ussd}# to top up before it runs out.",
        mt: "Know that data bundle yours of {size}GB ends {day} on {time} hrs. Call *{ussd}# to add before time finishes.",
    },
    Template {
        chi: "Network ya {brand} idzakhala ndi maintenance {day} kuyambira {time} hrs m'madera a {town}. Pepani pa zovuta zilizonse.",
        ht: "The {brand} network will undergo maintenance on {day} from {time} hrs in the {town} area. We apologise for any inconvenience.",
        mt: "Network of {brand} will have maintenance {day} starting {time} hrs in areas of {town}. Sorry on problems any.",
    },
    Template {
        chi: "Chatsopano! Gulani {bundle} ndi *{ussd}# mulandire ma minute {n} aulere ochezera anzanu a {brand} usiku uliwonse.",
        ht: "New! Buy the {bundle} with *{ussd}# and receive {n} free minutes to chat with your {brand} friends every night.",
        mt: "New thing! Buy {bundle} with *{ussd}# you receive minutes {n} free of chatting friends yours of {brand} every night.",
    },
    Template {
        chi: "Mwalandira MK{amount} kuchokera kwa {name} pa {momo}. Balance yanu yatsopano ndi MK{balance}. Ref {ref}.",
        ht: "You have received MK{amount} from {name} on {momo}. Your new balance is MK{balance}. Ref {ref}.",
        mt: "You received MK{amount} from {name} on {momo}. Balance yours new is MK{balance}. Ref {ref}.",
    },
    Template {
        chi: "Mwagula mayunitsi a MK{amount} pa nambala {phone}. Balance: MK{balance}. Zikomo pogwiritsa ntchito {brand}.",
        ht: "You have bought MK{amount} of airtime for number {phone}. Balance: MK{balance}. Thank you for using {brand}.",
        mt: "You bought units of MK{amount} on number {phone}. Balance: MK{balance}. Thank you for using work {brand}.",
    },
    Template {
        chi: "Promotion ya {brand}: gulani bundle iliyonse {day} mulandire bonasi ya {n}%. Imbani *{ussd}# kuti mudziwe zambiri.",
        ht: "{brand} promotion: buy any bundle on {day} and receive a {n}% bonus. Dial *{ussd}# to learn more.",
        mt: "Promotion of {brand}: buy bundle any {day} you receive bonus of {n}%. Call *{ussd}# to know more.",
    },
    Template {
        chi: "Akasitomala athu, ofesi yathu ya {town} yasamukira ku {town2}. Tipezeni kumeneko masiku a ntchito kuyambira 08:00 mpaka 17:00.",
        ht: "Dear customers, our {town} office has moved to {town2}. Find us there on working days from 08:00 to 17:00.",
        mt: "Customers ours, office ours of {town} moved to {town2}. Find us there days of work starting 08:00 until 17:00.",
    },
];
